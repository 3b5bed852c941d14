"""Symmetric powers Sym^n(A) of the built-in algebras.

Elements live on the orbit basis: a basis class is a multiset of n normal
monomials, stored as a tuple sorted in descending monomial order.  The
product of m classes sums, over permutation vectors (id, s_2, ..., s_m),
the class of the slotwise products, and divides by (n!)^(m-1).
"""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import AlgebraError, AlgebraId, NCPolynomial, NormalMonomial, unit
from .closed_forms import closed_form_product, has_closed_form
from .coeffs import ONE, PolyQH, ZERO
from .rewrite import TensorElement, expand_tensor, product_of_monomials

DEFAULT_MAX_WORK = 10**6

Multiset = tuple[NormalMonomial, ...]


class SizeError(RuntimeError):
    """The permutation enumeration would exceed the work cap."""


def max_work() -> int:
    raw = os.environ.get("QWEYL_MAX_WORK")
    return int(raw) if raw else DEFAULT_MAX_WORK


def canonical_multiset(monos: Sequence[NormalMonomial]) -> Multiset:
    return tuple(sorted(monos, key=NormalMonomial.sort_key, reverse=True))


class SymElement:
    """Element of Sym^n(A) on the multiset basis."""

    __slots__ = ("algebra", "arity", "_terms")

    def __init__(self, algebra, arity: int, terms: Mapping[Sequence[NormalMonomial], PolyQH] | None = None):
        self.algebra = AlgebraId.parse(algebra)
        if arity < 1:
            raise ValueError("symmetric power arity must be positive")
        self.arity = arity
        clean: dict[Multiset, PolyQH] = {}
        for key, c in (terms or {}).items():
            if len(key) != arity:
                raise AlgebraError(f"class with {len(key)} entries in Sym^{arity}")
            if any(m.algebra != self.algebra for m in key):
                raise AlgebraError("class entry from another algebra")
            key = canonical_multiset(key)
            clean[key] = clean.get(key, ZERO) + PolyQH.coerce(c)
        self._terms = {k: c for k, c in clean.items() if c}

    @classmethod
    def basis(cls, monos: Sequence[NormalMonomial], coeff=ONE) -> SymElement:
        """The class of ``monos[0] (x) ... (x) monos[n-1]``."""
        monos = tuple(monos)
        if not monos:
            raise ValueError("a class needs at least one entry")
        return cls(monos[0].algebra, len(monos), {monos: coeff})

    @classmethod
    def from_polys(cls, polys: Sequence[NCPolynomial]) -> SymElement:
        """Class of a tensor of arbitrary normal forms, expanded multilinearly."""
        return cls(polys[0].algebra, len(polys), expand_tensor(polys))

    @classmethod
    def unit(cls, algebra, arity: int) -> SymElement:
        return cls.basis([unit(algebra)] * arity)

    @property
    def terms(self) -> dict[Multiset, PolyQH]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __add__(self, other: SymElement) -> SymElement:
        _check(self, other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, ZERO) + c
        return SymElement(self.algebra, self.arity, out)

    def scale(self, c) -> SymElement:
        c = PolyQH.coerce(c)
        return SymElement(self.algebra, self.arity, {k: v * c for k, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymElement):
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
                {"key": [list(m.exps) for m in key], "coeff": str(c)} for key, c in self.sorted_terms()
            ],
        }

    def __repr__(self) -> str:
        body = " + ".join(
            f"({c})*[" + ", ".join(str(m) for m in key) + "]" for key, c in self.sorted_terms()
        )
        return f"SymElement({self.algebra.value}, n={self.arity}: {body or '0'})"


def _check(e: SymElement, f: SymElement):
    if e.algebra != f.algebra:
        raise AlgebraError(f"algebra mismatch: {e.algebra.value} vs {f.algebra.value}")
    if e.arity != f.arity:
        raise AlgebraError(f"arity mismatch: {e.arity} vs {f.arity}")


def slot_product(monos: Sequence[NormalMonomial], closed_form: bool = True) -> NCPolynomial:
    algebra = monos[0].algebra
    if closed_form and has_closed_form(algebra):
        return closed_form_product(algebra, tuple(m.exps for m in monos))
    return product_of_monomials(monos)


def sym_product(
    factors: Sequence[SymElement],
    *,
    closed_form: bool = True,
    work_cap: int | None = None,
    algebra=None,
    arity: int | None = None,
) -> SymElement:
    """Product of m elements of Sym^n(A).

    ``closed_form=False`` computes every slot product with the rewrite
    oracle even when closed-form coordinates exist.  The empty product is
    the unit class, which needs ``algebra`` and ``arity`` to be given.
    """
    if not factors:
        if algebra is None or arity is None:
            raise ValueError("empty sym_product needs algebra and arity")
        return SymElement.unit(algebra, arity)
    first = factors[0]
    for f in factors[1:]:
        _check(first, f)
    n, m = first.arity, len(factors)
    if m == 1:
        return first
    perms_per_factor = math.factorial(n)
    work = perms_per_factor ** (m - 1)
    cap = max_work() if work_cap is None else work_cap
    if work > cap:
        raise SizeError(f"(n!)^(m-1) = {work} permutation vectors exceeds the cap {cap}")

    perms = list(itertools.permutations(range(n)))
    scale = Fraction(1, work)
    out: dict[Multiset, PolyQH] = {}
    for combo in itertools.product(*(f.sorted_terms() for f in factors)):
        coeff = ONE
        for _, c in combo:
            coeff = coeff * c
        coeff = coeff * scale
        rows = [key for key, _ in combo]
        orbit_sum: dict[Multiset, PolyQH] = {}
        for tail in itertools.product(perms, repeat=m - 1):
            # slot j collects rows[i][pi_i(j)] for i = 1..m, with pi_1 = id
            arrangement = (tuple(range(n)),) + tail
            slots = [
                slot_product([rows[i][arrangement[i][j]] for i in range(m)], closed_form)
                for j in range(n)
            ]
            for key, c in expand_tensor(slots).items():
                key = canonical_multiset(key)
                orbit_sum[key] = orbit_sum.get(key, ZERO) + c
        for key, c in orbit_sum.items():
            out[key] = out.get(key, ZERO) + coeff * c
    return SymElement(first.algebra, n, out)


def to_invariants(e: SymElement) -> TensorElement:
    """The symmetrization map into the slot-permutation invariants of A^(x)n."""
    weight = Fraction(1, math.factorial(e.arity))
    out: dict[tuple[NormalMonomial, ...], PolyQH] = {}
    for key, c in e.items():
        share = c * weight
        for perm in itertools.permutations(key):
            out[perm] = out.get(perm, ZERO) + share
    return TensorElement(e.algebra, e.arity, out)


def from_invariants(t: TensorElement) -> SymElement:
    """Inverse of :func:`to_invariants` on invariant tensors."""
    if not t.is_invariant():
        raise AlgebraError("tensor is not invariant under slot permutations")
    out: dict[Multiset, PolyQH] = {}
    for key, c in t.items():
        orbit = canonical_multiset(key)
        if orbit in out:
            continue
        # s(class) spreads 1/|orbit| over each distinct arrangement
        orbit_size = math.factorial(t.arity)
        for count in Counter(key).values():
            orbit_size //= math.factorial(count)
        out[orbit] = c * orbit_size
    return SymElement(t.algebra, t.arity, out)
