"""Brute-force normal ordering by rule application, and tensor powers.

This module is the ground truth every closed form is checked against, so it
knows nothing about them: a word is reduced by repeatedly rewriting an
out-of-order adjacent pair with the algebra's unique rule for that pair.
"""

from __future__ import annotations

import heapq
import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .algebra import (
    AlgebraError,
    AlgebraId,
    LETTERS,
    NCPolynomial,
    NormalMonomial,
    RewriteRule,
    Word,
    decreases,
    inversions,
    monomial_of_normal_word,
    rule_table,
    word_of,
)
from .coeffs import ONE, PolyQH, ZERO

STRATEGIES = ("leftmost", "rightmost")


class TerminationError(AssertionError):
    """A rewrite step failed to decrease (length, inversions)."""


def _find_pair(idx: Sequence[int], strategy: str) -> int:
    positions = range(len(idx) - 1)
    if strategy == "rightmost":
        positions = reversed(positions)
    for i in positions:
        if idx[i] > idx[i + 1]:
            return i
    return -1


def _reduce(
    algebra: AlgebraId,
    letters: tuple[str, ...],
    strategy: str,
    table: Mapping[tuple[str, str], RewriteRule],
    check_termination: bool,
) -> dict[NormalMonomial, PolyQH]:
    order = {c: i for i, c in enumerate(LETTERS[algebra])}

    def key(w):
        return (-len(w), -inversions(algebra, w), w)

    # Every rewrite produces words strictly smaller in (length, inversions),
    # so popping largest-first visits each word once with its full coefficient.
    pending: dict[tuple[str, ...], PolyQH] = {letters: ONE}
    heap = [key(letters)]
    result: dict[NormalMonomial, PolyQH] = {}
    while heap:
        w = heapq.heappop(heap)[2]
        c = pending.pop(w)
        if not c:
            continue
        i = _find_pair([order[ch] for ch in w], strategy)
        if i < 0:
            m = monomial_of_normal_word(algebra, w)
            result[m] = result.get(m, ZERO) + c
            continue
        try:
            rule = table[(w[i], w[i + 1])]
        except KeyError:
            raise AlgebraError(f"no rule for out-of-order pair {w[i]}{w[i + 1]}") from None
        for repl, rc in rule.rhs:
            new = w[:i] + repl + w[i + 2 :]
            if check_termination and not decreases(algebra, w, new):
                raise TerminationError(f"{''.join(w)} -> {''.join(new)} does not decrease")
            if new in pending:
                pending[new] = pending[new] + c * rc
            else:
                pending[new] = c * rc
                heapq.heappush(heap, key(new))
    return {m: c for m, c in result.items() if c}


@lru_cache(maxsize=200_000)
def _cached(algebra: AlgebraId, letters: tuple[str, ...], strategy: str) -> tuple:
    table = rule_table(algebra)
    return tuple(_reduce(algebra, letters, strategy, table, False).items())


def normal_order(
    w: Word,
    *,
    strategy: str = "leftmost",
    rules: Iterable[RewriteRule] | None = None,
    check_termination: bool = False,
) -> NCPolynomial:
    """Normal form of a word in its algebra.

    ``rules`` substitutes a custom rule set (used for negative controls);
    ``check_termination`` asserts that every single step decreases
    (length, inversions).
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if rules is None and not check_termination:
        return NCPolynomial(w.algebra, dict(_cached(w.algebra, w.letters, strategy)))
    table = rule_table(w.algebra, rules)
    return NCPolynomial(w.algebra, _reduce(w.algebra, w.letters, strategy, table, check_termination))


@lru_cache(maxsize=200_000)
def _monomial_product(m1: NormalMonomial, m2: NormalMonomial) -> NCPolynomial:
    return normal_order(word_of(m1) + word_of(m2))


def multiply(p: NCPolynomial, r: NCPolynomial) -> NCPolynomial:
    """Product of two normal forms, computed by rewriting concatenated words."""
    if p.algebra != r.algebra:
        raise AlgebraError(f"algebra mismatch: {p.algebra.value} vs {r.algebra.value}")
    out: dict[NormalMonomial, PolyQH] = {}
    for m1, c1 in p.items():
        for m2, c2 in r.items():
            c = c1 * c2
            for m, c3 in _monomial_product(m1, m2).items():
                out[m] = out.get(m, ZERO) + c * c3
    return NCPolynomial(p.algebra, out)


def multiply_all(algebra, factors: Iterable[NCPolynomial]) -> NCPolynomial:
    result = NCPolynomial.one(algebra)
    for f in factors:
        result = multiply(result, f)
    return result


def product_of_monomials(monos: Sequence[NormalMonomial]) -> NCPolynomial:
    """Oracle normal form of ``monos[0] * monos[1] * ...``."""
    if not monos:
        raise ValueError("empty product needs an algebra; use NCPolynomial.one")
    return multiply_all(monos[0].algebra, (NCPolynomial.from_monomial(m) for m in monos))


Slots = tuple[NormalMonomial, ...]


def expand_tensor(polys: Sequence[NCPolynomial]) -> dict[Slots, PolyQH]:
    """Expand ``polys[0] (x) polys[1] (x) ...`` into tuple-indexed terms."""
    out: dict[Slots, PolyQH] = {}
    for combo in itertools.product(*(p.sorted_terms() for p in polys)):
        c = ONE
        for _, ci in combo:
            c = c * ci
        key = tuple(m for m, _ in combo)
        out[key] = out.get(key, ZERO) + c
    return out


class TensorElement:
    """Element of the n-th tensor power of an algebra."""

    __slots__ = ("algebra", "arity", "_terms")

    def __init__(self, algebra, arity: int, terms: Mapping[Slots, PolyQH] | None = None):
        self.algebra = AlgebraId.parse(algebra)
        if arity < 1:
            raise ValueError("tensor arity must be positive")
        self.arity = arity
        clean: dict[Slots, PolyQH] = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != arity:
                raise AlgebraError(f"tensor term of length {len(key)} in arity {arity}")
            if any(m.algebra != self.algebra for m in key):
                raise AlgebraError("tensor slot from another algebra")
            c = PolyQH.coerce(c)
            if c:
                clean[key] = c
        self._terms = clean

    @classmethod
    def pure(cls, slots: Sequence[NormalMonomial], coeff=ONE) -> TensorElement:
        return cls(slots[0].algebra, len(slots), {tuple(slots): coeff})

    @property
    def terms(self) -> dict[Slots, PolyQH]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __add__(self, other: TensorElement) -> TensorElement:
        _check_compatible(self, other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, ZERO) + c
        return TensorElement(self.algebra, self.arity, out)

    def scale(self, c) -> TensorElement:
        c = PolyQH.coerce(c)
        return TensorElement(self.algebra, self.arity, {k: v * c for k, v in self._terms.items()})

    def permuted(self, perm: Sequence[int]) -> TensorElement:
        """Move slot ``perm[i]`` into position ``i``."""
        return TensorElement(
            self.algebra, self.arity, {tuple(k[p] for p in perm): c for k, c in self._terms.items()}
        )

    def is_invariant(self) -> bool:
        for key, c in self._terms.items():
            for perm in itertools.permutations(range(self.arity)):
                if self._terms.get(tuple(key[p] for p in perm)) != c:
                    return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.algebra, self.arity, self._terms) == (other.algebra, other.arity, other._terms)

    def __hash__(self):
        return hash((self.algebra, self.arity, frozenset(self._terms.items())))

    def sorted_terms(self):
        return sorted(
            self._terms.items(), key=lambda t: tuple(m.sort_key() for m in t[0]), reverse=True
        )

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.value,
            "arity": self.arity,
            "terms": [
                {"slots": [list(m.exps) for m in key], "coeff": str(c)} for key, c in self.sorted_terms()
            ],
        }

    def __repr__(self) -> str:
        body = " + ".join(
            f"({c})*" + "⊗".join(str(m) for m in key) for key, c in self.sorted_terms()
        )
        return f"TensorElement({self.algebra.value}, n={self.arity}: {body or '0'})"


def _check_compatible(s: TensorElement, t: TensorElement):
    if s.algebra != t.algebra:
        raise AlgebraError(f"algebra mismatch: {s.algebra.value} vs {t.algebra.value}")
    if s.arity != t.arity:
        raise AlgebraError(f"arity mismatch: {s.arity} vs {t.arity}")


def tensor_multiply(s: TensorElement, t: TensorElement) -> TensorElement:
    """Slotwise product in the tensor power algebra."""
    _check_compatible(s, t)
    out: dict[Slots, PolyQH] = {}
    for k1, c1 in s.items():
        for k2, c2 in t.items():
            slots = [_monomial_product(a, b) for a, b in zip(k1, k2)]
            c = c1 * c2
            for key, c3 in expand_tensor(slots).items():
                out[key] = out.get(key, ZERO) + c * c3
    return TensorElement(s.algebra, s.arity, out)


def tensor_unit(algebra, arity: int) -> TensorElement:
    u = NCPolynomial.one(algebra)
    (m,) = u.terms
    return TensorElement(algebra, arity, {(m,) * arity: ONE})


def symmetrize(slots: Sequence[NormalMonomial]) -> TensorElement:
    """``(1/n!) * sum over all slot permutations`` of a pure tensor."""
    slots = tuple(slots)
    n = len(slots)
    if n == 0:
        raise ValueError("symmetrize needs at least one slot")
    weight = PolyQH.const(Fraction(1, math.factorial(n)))
    out: dict[Slots, PolyQH] = {}
    for perm in itertools.permutations(slots):
        out[perm] = out.get(perm, ZERO) + weight
    return TensorElement(slots[0].algebra, n, out)
