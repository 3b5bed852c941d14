"""Operator representations of the built-in algebras.

Generators act on exact polynomial spaces: ``Q[q,h][x]`` for the Weyl-type
algebras and ``Q[x1,x2]`` for U(sl2).  The q- and h-derivatives are computed
as exact difference quotients, never as limits.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .algebra import AlgebraId, NCPolynomial, RewriteRule, Word, presentation, word_of
from .closed_forms import q_normal_coords, qo_normal_coords
from .coeffs import ONE, ZERO, H, PolyQH, Q, q_falling, q_power


class RepresentationError(ValueError):
    """Operator applied to the wrong kind of polynomial space."""


class XPoly:
    """Polynomial in ``x`` with ``PolyQH`` coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, PolyQH] | None = None):
        clean = {}
        for d, c in (terms or {}).items():
            if d < 0:
                raise ValueError("negative power of x")
            c = PolyQH.coerce(c)
            if c:
                clean[d] = c
        self._terms = clean

    @classmethod
    def monomial(cls, n: int, c=ONE) -> XPoly:
        return cls({n: c})

    def items(self):
        return self._terms.items()

    def __add__(self, other: XPoly) -> XPoly:
        out = dict(self._terms)
        for d, c in other._terms.items():
            out[d] = out.get(d, ZERO) + c
        return XPoly(out)

    def __sub__(self, other: XPoly) -> XPoly:
        return self + other.scale(-1)

    def scale(self, c) -> XPoly:
        c = PolyQH.coerce(c)
        return XPoly({d: v * c for d, v in self._terms.items()})

    def subs(self, q=None, h=None) -> XPoly:
        return XPoly({d: c.subs(q=q, h=h) for d, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, XPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "XPoly(0)"
        body = " + ".join(f"({c})*x^{d}" for d, c in sorted(self._terms.items()))
        return f"XPoly({body})"


class X12Poly:
    """Polynomial in ``x1, x2`` with rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Fraction | int] | None = None):
        clean = {}
        for k, c in (terms or {}).items():
            if c:
                clean[tuple(k)] = Fraction(c)
        self._terms = clean

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> X12Poly:
        return cls({(i, j): c})

    def items(self):
        return self._terms.items()

    def __add__(self, other: X12Poly) -> X12Poly:
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return X12Poly(out)

    def scale(self, c) -> X12Poly:
        c = PolyQH.coerce(c)
        if not c.is_constant():
            raise RepresentationError("x1, x2 polynomials only take rational scalars")
        s = c.constant()
        return X12Poly({k: v * s for k, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, X12Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "X12Poly(0)"
        body = " + ".join(f"{c}*x1^{i}*x2^{j}" for (i, j), c in sorted(self._terms.items()))
        return f"X12Poly({body})"


PolySpaceElement = Union[XPoly, X12Poly]


# --- exact difference quotients ----------------------------------------------


def divide_by_q_minus_one(p: PolyQH) -> PolyQH:
    """Exact quotient ``p / (q - 1)``; raises if (q - 1) does not divide p."""
    by_h: dict[int, dict[int, object]] = {}
    for (dq, dh), c in p.items():
        by_h.setdefault(dh, {})[dq] = c
    out = {}
    for dh, coeffs in by_h.items():
        top = max(coeffs)
        # synthetic division by the root q = 1, from the top degree down
        carry = 0
        for dq in range(top, 0, -1):
            carry += coeffs.get(dq, 0)
            out[(dq - 1, dh)] = carry
        if carry + coeffs.get(0, 0) != 0:
            raise ArithmeticError("q - 1 does not divide the polynomial")
    return PolyQH(out)


def _x_op(f: XPoly) -> XPoly:
    return XPoly({d + 1: c for d, c in f.items()})


def _q_shift(f: XPoly) -> XPoly:
    return XPoly({d: c * q_power(d) for d, c in f.items()})


def _q_derivative(f: XPoly) -> XPoly:
    diff = _q_shift(f) - f
    out = {}
    for d, c in diff.items():
        if d == 0:
            raise ArithmeticError("x does not divide f(qx) - f(x)")
        out[d - 1] = divide_by_q_minus_one(c)
    return XPoly(out)


def _h_shift(f: XPoly) -> XPoly:
    out: dict[int, PolyQH] = {}
    for d, c in f.items():
        for j in range(d + 1):
            out[j] = out.get(j, ZERO) + c * PolyQH.monomial(0, d - j, math.comb(d, j))
    return XPoly(out)


def _divide_by_h(p: PolyQH) -> PolyQH:
    out = {}
    for (dq, dh), c in p.items():
        if dh == 0:
            raise ArithmeticError("h does not divide the polynomial")
        out[(dq, dh - 1)] = c
    return PolyQH(out)


def _h_derivative(f: XPoly) -> XPoly:
    diff = _h_shift(f) - f
    return XPoly({d: _divide_by_h(c) for d, c in diff.items()})


def _derivative(f: XPoly) -> XPoly:
    return XPoly({d - 1: c * d for d, c in f.items() if d})


def _sl2_x(f: X12Poly) -> X12Poly:
    # x2 d/dx1
    return X12Poly({(i - 1, j + 1): c * i for (i, j), c in f.items() if i})


def _sl2_y(f: X12Poly) -> X12Poly:
    # x1 d/dx1 - x2 d/dx2
    return X12Poly({(i, j): c * (i - j) for (i, j), c in f.items()})


def _sl2_z(f: X12Poly) -> X12Poly:
    # x1 d/dx2
    return X12Poly({(i + 1, j - 1): c * j for (i, j), c in f.items() if j})


PRIMITIVES = {
    "x": (XPoly, _x_op),
    "q": (XPoly, lambda f: f.scale(Q)),
    "h": (XPoly, lambda f: f.scale(H)),
    "d": (XPoly, _derivative),
    "d_q": (XPoly, _q_derivative),
    "s_q": (XPoly, _q_shift),
    "d_h": (XPoly, _h_derivative),
    "s_h": (XPoly, _h_shift),
    "sl2_x": (X12Poly, _sl2_x),
    "sl2_y": (X12Poly, _sl2_y),
    "sl2_z": (X12Poly, _sl2_z),
}


# --- operator expressions ----------------------------------------------------


@dataclass(frozen=True)
class Prim:
    name: str

    def __post_init__(self):
        if self.name not in PRIMITIVES:
            raise RepresentationError(f"unknown primitive operator {self.name!r}")


@dataclass(frozen=True)
class Compose:
    """``factors[0] o factors[1] o ...``; the last factor acts first."""

    factors: tuple


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (PolyQH, operator)


OperatorExpr = Union[Prim, Compose, Sum]


def apply(op: OperatorExpr, f: PolySpaceElement) -> PolySpaceElement:
    if isinstance(op, Prim):
        space, fn = PRIMITIVES[op.name]
        if not isinstance(f, space):
            raise RepresentationError(f"{op.name} acts on {space.__name__}, got {type(f).__name__}")
        return fn(f)
    if isinstance(op, Compose):
        for factor in reversed(op.factors):
            f = apply(factor, f)
        return f
    if isinstance(op, Sum):
        total = None
        for c, sub in op.terms:
            g = apply(sub, f).scale(c)
            total = g if total is None else total + g
        return total if total is not None else f.scale(0)
    raise TypeError(f"not an operator expression: {op!r}")


RHO: dict[AlgebraId, dict[str, OperatorExpr]] = {
    AlgebraId.WEYL: {"x": Prim("x"), "y": Compose((Prim("h"), Prim("d")))},
    AlgebraId.Q_OSCILLATOR: {"x": Prim("x"), "y": Compose((Prim("h"), Prim("d_q")))},
    AlgebraId.Q_WEYL: {"x": Prim("x"), "y": Prim("s_q"), "z": Prim("d_q")},
    AlgebraId.H_WEYL: {"x": Prim("x"), "y": Prim("d_h"), "z": Prim("s_h")},
    AlgebraId.SL2: {"x": Prim("sl2_x"), "y": Prim("sl2_y"), "z": Prim("sl2_z")},
}


def rho(algebra, letter: str) -> OperatorExpr:
    return RHO[AlgebraId.parse(algebra)][letter]


def rho_word(w: Word) -> OperatorExpr:
    return Compose(tuple(RHO[w.algebra][c] for c in w.letters))


def rho_poly(p: NCPolynomial) -> OperatorExpr:
    return Sum(tuple((c, rho_word(word_of(m))) for m, c in p.sorted_terms()))


def basis(algebra, max_degree: int) -> list[PolySpaceElement]:
    algebra = AlgebraId.parse(algebra)
    if algebra is AlgebraId.SL2:
        return [X12Poly.monomial(i, d - i) for d in range(max_degree + 1) for i in range(d + 1)]
    return [XPoly.monomial(d) for d in range(max_degree + 1)]


def representation_failures(
    algebra, max_degree: int, rules: Iterable[RewriteRule] | None = None
) -> list[dict]:
    """Relations whose two sides act differently on some basis polynomial."""
    algebra = AlgebraId.parse(algebra)
    failures = []
    for rule in presentation(algebra) if rules is None else rules:
        lhs = Compose(tuple(RHO[algebra][c] for c in rule.lhs))
        rhs = Sum(tuple((c, Compose(tuple(RHO[algebra][ch] for ch in w))) for w, c in rule.rhs))
        for f in basis(algebra, max_degree):
            left, right = apply(lhs, f), apply(rhs, f)
            if left != right:
                failures.append(
                    {"relation": "".join(rule.lhs), "input": repr(f), "lhs": repr(left), "rhs": repr(right)}
                )
    return failures


def verify_representation(algebra, max_degree: int, rules: Iterable[RewriteRule] | None = None) -> bool:
    """True iff every defining relation holds on all basis polynomials up to ``max_degree``."""
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    return not representation_failures(algebra, max_degree, rules)


# --- corollary identities ----------------------------------------------------


def corollary_qosc_sides(t: int, a: Sequence[int], b: Sequence[int]) -> tuple[PolyQH, PolyQH]:
    """Both sides of the q-oscillator falling-factorial identity at ``x^t``."""
    if len(a) != len(b):
        raise ValueError("a and b must have equal length")
    n = len(a)
    left = ONE
    for i in reversed(range(n)):
        # degree in x before factor i acts
        deg = t + sum(a[i + 1 :]) - sum(b[i + 1 :])
        factor = q_falling(deg, b[i]) if b[i] else ONE
        left = left * factor
        if not left:
            break
    right = ZERO
    coords = qo_normal_coords(tuple(zip(a, b)))
    for k, n_k in coords.items():
        right = right + n_k * q_falling(t, sum(b) - k)
    return left, right


def verify_corollary_qosc(t: int, a: Sequence[int], b: Sequence[int]) -> bool:
    left, right = corollary_qosc_sides(t, a, b)
    return left == right


def corollary_qweyl_sides(
    t: int, a: Sequence[int], b: Sequence[int], c: Sequence[int]
) -> tuple[PolyQH, PolyQH]:
    """Both sides of the q-Weyl identity obtained by acting on ``x^t``."""
    if not len(a) == len(b) == len(c):
        raise ValueError("a, b and c must have equal length")
    n = len(a)
    left = ONE
    for i in reversed(range(n)):
        deg = t + sum(a[i + 1 :]) - sum(c[i + 1 :])
        factor = q_falling(deg, c[i]) if c[i] else ONE
        if not factor:
            left = ZERO
            break
        gamma = b[i] * (deg - c[i])
        left = left * factor * q_power(gamma)
    right = ZERO
    c_abs, b_abs = sum(c), sum(b)
    for ks, n_k in q_normal_coords(tuple(zip(a, b, c))).items():
        k_abs = sum(ks)
        tail = q_falling(t, c_abs - k_abs)
        if not tail:
            continue
        right = right + n_k * q_power((b_abs + k_abs) * (t - c_abs + k_abs)) * tail
    return left, right


def verify_corollary_qweyl(t: int, a: Sequence[int], b: Sequence[int], c: Sequence[int]) -> bool:
    left, right = corollary_qweyl_sides(t, a, b, c)
    return left == right
