"""Exact coefficient arithmetic.

``PolyQH`` is a sparse polynomial in the two central parameters ``q`` and
``h`` with exact rational coefficients.  The remaining functions are the
scalar combinatorial quantities the closed-form normal coordinates are built
from: q-integers, q-falling factorials, falling factorials, multinomials and
elementary symmetric functions of arithmetic progressions.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]


def _normalize_scalar(c) -> Scalar:
    if isinstance(c, bool):
        c = int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        c = Fraction(c)
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"not an exact rational: {c!r}")


class PolyQH:
    """Sparse polynomial in ``q`` and ``h`` over the rationals.

    Terms map ``(deg_q, deg_h)`` to a nonzero coefficient.  Instances are
    immutable and hashable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], Scalar] | None = None):
        clean: dict[tuple[int, int], Scalar] = {}
        if terms:
            for (dq, dh), c in terms.items():
                if dq < 0 or dh < 0:
                    raise ValueError(f"negative degree in PolyQH term {(dq, dh)}")
                c = _normalize_scalar(c)
                if c:
                    clean[(dq, dh)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> PolyQH:
        # caller guarantees canonical (nonzero, normalized) terms
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Scalar) -> PolyQH:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, dq: int = 0, dh: int = 0, c: Scalar = 1) -> PolyQH:
        return cls({(dq, dh): c})

    @property
    def terms(self) -> dict[tuple[int, int], Scalar]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self._terms)

    def constant(self) -> Scalar:
        """Coefficient of q^0 h^0."""
        return self._terms.get((0, 0), 0)

    def degree_q(self) -> int:
        return max((dq for dq, _ in self._terms), default=-1)

    def degree_h(self) -> int:
        return max((dh for _, dh in self._terms), default=-1)

    def coefficient(self, dq: int, dh: int = 0) -> Scalar:
        return self._terms.get((dq, dh), 0)

    @staticmethod
    def coerce(other) -> PolyQH:
        if isinstance(other, PolyQH):
            return other
        return PolyQH.const(other)

    def __add__(self, other) -> PolyQH:
        try:
            other = PolyQH.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = _normalize_scalar(s)
            else:
                out.pop(k, None)
        return PolyQH._raw(out)

    __radd__ = __add__

    def __neg__(self) -> PolyQH:
        return PolyQH._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> PolyQH:
        try:
            other = PolyQH.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> PolyQH:
        return PolyQH.coerce(other) - self

    def __mul__(self, other) -> PolyQH:
        if isinstance(other, PolyQH):
            if not self._terms or not other._terms:
                return ZERO
            if len(other._terms) == 1 and (0, 0) in other._terms:
                return self._scaled(other._terms[(0, 0)])
            if len(self._terms) == 1 and (0, 0) in self._terms:
                return other._scaled(self._terms[(0, 0)])
            out: dict[tuple[int, int], Scalar] = {}
            for (a1, b1), c1 in self._terms.items():
                for (a2, b2), c2 in other._terms.items():
                    k = (a1 + a2, b1 + b2)
                    out[k] = out.get(k, 0) + c1 * c2
            return PolyQH._raw({k: _normalize_scalar(v) for k, v in out.items() if v})
        try:
            c = _normalize_scalar(other)
        except TypeError:
            return NotImplemented
        return self._scaled(c)

    def _scaled(self, c: Scalar) -> PolyQH:
        if not c:
            return ZERO
        if c == 1:
            return self
        if isinstance(c, int):
            return PolyQH._raw({k: v * c if isinstance(v, int) else _normalize_scalar(v * c)
                                for k, v in self._terms.items()})
        return PolyQH._raw({k: _normalize_scalar(v * c) for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other) -> PolyQH:
        c = _normalize_scalar(other)
        if not c:
            raise ZeroDivisionError("PolyQH division by zero")
        return PolyQH({k: Fraction(v) / c for k, v in self._terms.items()})

    def __pow__(self, e: int) -> PolyQH:
        if e < 0:
            raise ValueError("negative power of PolyQH")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyQH):
            return self._terms == other._terms
        try:
            return self._terms == PolyQH.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def subs(self, q: Scalar | None = None, h: Scalar | None = None) -> PolyQH:
        """Substitute numeric values for ``q`` and/or ``h``."""
        out: dict[tuple[int, int], Scalar] = {}
        for (dq, dh), c in self._terms.items():
            if q is not None:
                c = c * Fraction(q) ** dq
                dq = 0
            if h is not None:
                c = c * Fraction(h) ** dh
                dh = 0
            out[(dq, dh)] = out.get((dq, dh), 0) + c
        return PolyQH(out)

    def sorted_terms(self) -> list[tuple[tuple[int, int], Scalar]]:
        return sorted(self._terms.items())

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, ((dq, dh), c) in enumerate(self.sorted_terms()):
            factors = []
            if dq:
                factors.append("q" if dq == 1 else f"q^{dq}")
            if dh:
                factors.append("h" if dh == 1 else f"h^{dh}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"PolyQH({str(self)!r})"


ZERO = PolyQH()
ONE = PolyQH.const(1)
Q = PolyQH.monomial(1, 0)
H = PolyQH.monomial(0, 1)


def q_power(e: int) -> PolyQH:
    return PolyQH.monomial(e, 0)


@lru_cache(maxsize=None)
def q_integer(n: int) -> PolyQH:
    """The q-integer ``[n] = 1 + q + ... + q^(n-1)``."""
    if n < 0:
        raise ValueError(f"q_integer needs n >= 0, got {n}")
    return PolyQH({(i, 0): 1 for i in range(n)})


@lru_cache(maxsize=None)
def q_falling(n: int, k: int) -> PolyQH:
    """``[n]_k = [n][n-1]...[n-k+1]``; zero as soon as a factor ``[0]`` occurs."""
    if k < 0:
        raise ValueError(f"q_falling needs k >= 0, got {k}")
    if k == 0:
        return ONE
    if n < 0:
        raise ValueError(f"[{n}]_{k} is not a polynomial in q")
    if k > n:
        # the descending product passes through [0]
        return ZERO
    result = ONE
    for j in range(k):
        result = result * q_integer(n - j)
    return result


def falling(a: int, n: int) -> int:
    """Classical falling factorial ``a (a-1) ... (a-n+1)``."""
    if n < 0:
        raise ValueError(f"falling needs n >= 0, got {n}")
    result = 1
    for j in range(n):
        result *= a - j
    return result


def multinomial(b: int, k: Iterable[int]) -> int:
    """``b! / (prod k_i! * (b - |k|)!)``, zero when ``|k| > b``."""
    k = tuple(k)
    if any(ki < 0 for ki in k) or b < 0:
        return 0
    rest = b - sum(k)
    if rest < 0:
        return 0
    result = math.factorial(b) // math.factorial(rest)
    for ki in k:
        result //= math.factorial(ki)
    return result


def elem_sym(s: int, n: int, b: int) -> int:
    """Elementary symmetric polynomial ``e_s`` of ``b, b-1, ..., b-n+1``."""
    if not 0 <= s <= n:
        raise ValueError(f"elem_sym needs 0 <= s <= n, got s={s}, n={n}")
    # e[j] after processing the first i values
    e = [1] + [0] * s
    for i in range(n):
        v = b - i
        for j in range(min(i + 1, s), 0, -1):
            e[j] += v * e[j - 1]
    return e[s]


@lru_cache(maxsize=None)
def gauss_binomial(a: int, k: int) -> PolyQH:
    """Gaussian binomial by ``[a,k] = [a-1,k-1] + q^k [a-1,k]``."""
    if k < 0 or k > a:
        return ZERO
    if k == 0 or k == a:
        return ONE
    return gauss_binomial(a - 1, k - 1) + q_power(k) * gauss_binomial(a - 1, k)
