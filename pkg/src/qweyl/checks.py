"""Verification suites run by ``qweyl verify`` and ``qweyl selftest``.

Each check sweeps a bounded family exhaustively (or, for symmetric-power
products, a fixed seeded sample) and stops at the first counterexample.
All comparisons are exact.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterator

from .algebra import AlgebraId, LETTERS, NCPolynomial, NormalMonomial, RewriteRule, presentation
from .closed_forms import (
    CLOSED_FORM_ALGEBRAS,
    chi_k,
    closed_form_product,
    qo_normal_coords,
    qo_recursion_step,
)
from .coeffs import ONE, gauss_binomial
from .representation import (
    Prim,
    XPoly,
    apply,
    basis,
    corollary_qosc_sides,
    corollary_qweyl_sides,
    representation_failures,
)
from .rewrite import product_of_monomials, tensor_multiply
from .sympower import SymElement, canonical_multiset, sym_product, to_invariants


@dataclass
class Bounds:
    max_exp: int = 2
    max_factors: int = 3
    max_t: int = 5
    corollary_length: int = 2
    max_arity: int = 3
    max_degree: int = 6
    chi_max: int = 8
    derivative_degree: int = 8
    sym_samples: int = 40
    assoc_samples: int = 3
    seed: int = 20031


@dataclass
class CheckResult:
    criterion: int
    name: str
    passed: bool
    checked: int
    seconds: float = 0.0
    counterexample: dict | None = field(default=None)

    def to_json(self) -> dict:
        # timings stay out of the JSON so reports are reproducible byte for byte
        out = asdict(self)
        del out["seconds"]
        if out["counterexample"] is None:
            del out["counterexample"]
        return out

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.criterion}: {self.name} ({self.checked} cases, {self.seconds:.2f}s)"


def exponent_grid(algebra: AlgebraId, bounds: Bounds) -> Iterator[tuple[tuple[int, ...], ...]]:
    width = len(LETTERS[algebra])
    tuples = list(itertools.product(range(bounds.max_exp + 1), repeat=width))
    for n in range(1, bounds.max_factors + 1):
        yield from itertools.product(tuples, repeat=n)


def _run(criterion: int, name: str, body: Callable[[], tuple[int, dict | None]]) -> CheckResult:
    start = time.perf_counter()
    checked, counterexample = body()
    return CheckResult(
        criterion, name, counterexample is None, checked, time.perf_counter() - start, counterexample
    )


def oracle_of(algebra: AlgebraId, A) -> NCPolynomial:
    return product_of_monomials([NormalMonomial(algebra, t) for t in A])


def check_oracle_equivalence(algebra: AlgebraId, bounds: Bounds, criterion: int) -> CheckResult:
    def body():
        count = 0
        for A in exponent_grid(algebra, bounds):
            count += 1
            closed = closed_form_product(algebra, A)
            oracle = oracle_of(algebra, A)
            if closed != oracle:
                return count, {"algebra": algebra.value, "A": A, "closed_form": str(closed), "oracle": str(oracle)}
        return count, None

    return _run(criterion, f"oracle equivalence, {algebra.value}", body)


def check_chi_gauss(bounds: Bounds) -> CheckResult:
    def body():
        count = 0
        for a in range(bounds.chi_max + 1):
            for k in range(a + 1):
                count += 1
                if chi_k(a, k) != gauss_binomial(a, k):
                    return count, {"a": a, "k": k, "chi": str(chi_k(a, k)), "gauss": str(gauss_binomial(a, k))}
        return count, None

    return _run(3, "chi_k equals the Gaussian binomial", body)


def check_qo_recursion(bounds: Bounds) -> CheckResult:
    alg = AlgebraId.Q_OSCILLATOR

    def body():
        count = 0
        for A in exponent_grid(alg, bounds):
            count += 1
            coords = qo_normal_coords(A)
            top = min(sum(a for a, _ in A), sum(b for _, b in A))
            for k in range(top + 2):
                rec = qo_recursion_step(A, k)
                if rec != coords.get(k, 0):
                    return count, {"A": A, "k": k, "recursion": str(rec), "enumeration": str(coords.get(k, 0))}
        return count, None

    return _run(4, "q-oscillator recursion equals enumeration", body)


def negative_control_rules() -> list[RewriteRule]:
    """q-oscillator rules with the q dropped from yx -> q xy + h."""
    return [RewriteRule(AlgebraId.Q_OSCILLATOR, ("y", "x"), ((("x", "y"), ONE),))]


def check_representations(bounds: Bounds) -> CheckResult:
    def body():
        count = 0
        for alg in AlgebraId:
            count += len(presentation(alg)) * len(basis(alg, bounds.max_degree))
            failures = representation_failures(alg, bounds.max_degree)
            if failures:
                return count, {"algebra": alg.value, **failures[0]}
        count += 1
        if not representation_failures(AlgebraId.Q_OSCILLATOR, bounds.max_degree, negative_control_rules()):
            return count, {"negative_control": "dropping q from yx -> q xy + h was not detected"}
        return count, None

    return _run(5, "representations respect the relations (+ negative control)", body)


def check_corollaries(bounds: Bounds) -> CheckResult:
    def body():
        count = 0
        by_len = [
            list(itertools.product(range(bounds.max_exp + 1), repeat=length))
            for length in range(1, bounds.corollary_length + 1)
        ]
        for t in range(bounds.max_t + 1):
            for vs in by_len:
                for a, b in itertools.product(vs, repeat=2):
                    count += 1
                    left, right = corollary_qosc_sides(t, a, b)
                    if left != right:
                        return count, {"identity": "q-oscillator", "t": t, "a": a, "b": b,
                                       "left": str(left), "right": str(right)}
                    for c in vs:
                        count += 1
                        left, right = corollary_qweyl_sides(t, a, b, c)
                        if left != right:
                            return count, {"identity": "q-weyl", "t": t, "a": a, "b": b, "c": c,
                                           "left": str(left), "right": str(right)}
        return count, None

    return _run(6, "corollary identities", body)


def sym_family(algebra: AlgebraId, bounds: Bounds) -> Iterator[tuple[int, SymElement, SymElement]]:
    """Seeded sample of pairs of basis classes with exponents <= max_exp."""
    width = len(LETTERS[algebra])
    monos = [NormalMonomial(algebra, t) for t in itertools.product(range(bounds.max_exp + 1), repeat=width)]
    for n in range(1, bounds.max_arity + 1):
        rng = random.Random(f"{bounds.seed}:{algebra.value}:{n}")
        for _ in range(bounds.sym_samples):
            e = SymElement.basis(canonical_multiset(rng.choices(monos, k=n)))
            f = SymElement.basis(canonical_multiset(rng.choices(monos, k=n)))
            yield n, e, f


def _sym_assoc_triples(algebra: AlgebraId, bounds: Bounds):
    width = len(LETTERS[algebra])
    monos = [NormalMonomial(algebra, t) for t in itertools.product(range(bounds.max_exp + 1), repeat=width)]
    for n in range(1, bounds.max_arity + 1):
        rng = random.Random(f"{bounds.seed}:assoc:{algebra.value}:{n}")
        for _ in range(bounds.assoc_samples):
            yield tuple(SymElement.basis(rng.choices(monos, k=n)) for _ in range(3))


def check_sym_homomorphism(bounds: Bounds) -> CheckResult:
    def body():
        count = 0
        for alg in AlgebraId:
            for n, e, f in sym_family(alg, bounds):
                count += 1
                lhs = to_invariants(sym_product([e, f]))
                rhs = tensor_multiply(to_invariants(e), to_invariants(f))
                if lhs != rhs:
                    return count, {"algebra": alg.value, "e": repr(e), "f": repr(f)}
            for e, f, g in _sym_assoc_triples(alg, bounds):
                count += 1
                flat = sym_product([e, f, g])
                nested = sym_product([sym_product([e, f]), g])
                if flat != nested:
                    return count, {"algebra": alg.value, "associativity": [repr(e), repr(f), repr(g)]}
        return count, None

    return _run(7, "symmetrization is a homomorphism (+ associativity)", body)


def check_sym_closed_forms(bounds: Bounds) -> CheckResult:
    def body():
        count = 0
        for alg in AlgebraId:
            for n, e, f in sym_family(alg, bounds):
                count += 1
                fast = sym_product([e, f], closed_form=True)
                slow = sym_product([e, f], closed_form=False)
                if fast != slow:
                    return count, {"algebra": alg.value, "e": repr(e), "f": repr(f),
                                   "closed_form": repr(fast), "oracle": repr(slow)}
        return count, None

    return _run(8, "Sym^n products via closed forms equal oracle products", body)


def _classical_derivative(f: XPoly) -> XPoly:
    return XPoly({d - 1: c * d for d, c in f.items() if d})


def check_classical_limits(bounds: Bounds) -> CheckResult:
    def body():
        count = 0
        for A in exponent_grid(AlgebraId.Q_OSCILLATOR, bounds):
            count += 1
            monos = [NormalMonomial(AlgebraId.Q_OSCILLATOR, t) for t in A]
            qo = product_of_monomials(monos).subs(q=1)
            weyl = product_of_monomials([NormalMonomial(AlgebraId.WEYL, t) for t in A])
            as_weyl = NCPolynomial(AlgebraId.WEYL, {NormalMonomial(AlgebraId.WEYL, m.exps): c for m, c in qo.items()})
            if as_weyl != weyl:
                return count, {"A": A, "q_oscillator_at_1": str(as_weyl), "weyl": str(weyl)}
            for k, val in qo_normal_coords(A).items():
                v1 = val.subs(q=1)
                if not (v1.is_constant() and isinstance(v1.constant(), int) and v1.constant() >= 0):
                    return count, {"A": A, "k": k, "N_at_q_1": str(v1)}
        for d in range(bounds.derivative_degree + 1):
            count += 1
            f = XPoly.monomial(d)
            classical = _classical_derivative(f)
            dq = apply(Prim("d_q"), f).subs(q=1)
            dh = apply(Prim("d_h"), f).subs(h=0)
            if dq != classical or dh != classical:
                return count, {"degree": d, "d_q_at_1": repr(dq), "d_h_at_0": repr(dh)}
        return count, None

    return _run(9, "classical limits q -> 1, h -> 0", body)


def criteria(bounds: Bounds | None = None) -> list[tuple[int, Callable[[], CheckResult]]]:
    b = bounds or Bounds()
    return [
        (1, lambda: check_oracle_equivalence(AlgebraId.Q_OSCILLATOR, b, 1)),
        *[(2, lambda alg=alg: check_oracle_equivalence(alg, b, 2)) for alg in CLOSED_FORM_ALGEBRAS[1:]],
        (3, lambda: check_chi_gauss(b)),
        (4, lambda: check_qo_recursion(b)),
        (5, lambda: check_representations(b)),
        (6, lambda: check_corollaries(b)),
        (7, lambda: check_sym_homomorphism(b)),
        (8, lambda: check_sym_closed_forms(b)),
        (9, lambda: check_classical_limits(b)),
    ]


SUITES = {
    "representations": (5,),
    "corollaries": (6,),
    "oracle-equiv": (1, 2, 3, 4),
    "sym-power": (7, 8),
    "classical-limits": (9,),
    "all": (1, 2, 3, 4, 5, 6, 7, 8, 9),
}


def run_suite(suite: str, bounds: Bounds | None = None, on_result=None) -> list[CheckResult]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r} (expected one of {', '.join(SUITES)})")
    wanted = SUITES[suite]
    results = []
    for number, make in criteria(bounds):
        if number not in wanted:
            continue
        result = make()
        results.append(result)
        if on_result:
            on_result(result)
    return results
