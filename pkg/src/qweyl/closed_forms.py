"""Closed-form normal coordinates of products of normal monomials.

For a sequence ``A = (A_1, ..., A_n)`` of exponent tuples, the product
``X^{A_1} ... X^{A_n}`` is expanded in the normal basis by explicit
combinatorial sums rather than by rewriting:

* q-oscillator: a sum of ``q^{c(p)}`` over partial matchings ``p`` of the
  y's into later x's (:func:`qo_normal_coords`), and the equivalent
  letter-by-letter recursion (:func:`qo_recursion_step`);
* q-Weyl, h-Weyl and U(sl2): products of per-step factors indexed by integer
  vectors (:func:`q_normal_coords`, :func:`h_normal_coords`,
  :func:`sl2_normal_coords`).

Enumeration cost grows factorially with the exponents; everything here is
meant for desk-scale inputs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .algebra import AlgebraError, AlgebraId, LETTERS, NCPolynomial, NormalMonomial
from .coeffs import (
    ONE,
    ZERO,
    H,
    PolyQH,
    elem_sym,
    falling,
    multinomial,
    q_falling,
    q_integer,
    q_power,
)

CLOSED_FORM_ALGEBRAS = (
    AlgebraId.Q_OSCILLATOR,
    AlgebraId.Q_WEYL,
    AlgebraId.H_WEYL,
    AlgebraId.SL2,
)


@dataclass(frozen=True)
class ExponentSeq:
    """Exponent tuples ``A_1, ..., A_n`` of the factors of a product."""

    algebra: AlgebraId
    A: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        width = len(LETTERS[self.algebra])
        if not self.A:
            raise AlgebraError("an exponent sequence needs at least one factor")
        for t in self.A:
            if len(t) != width:
                raise AlgebraError(f"{self.algebra.value} factors have {width} exponents, got {t}")
            if any(e < 0 for e in t):
                raise AlgebraError(f"negative exponent in {t}")

    @classmethod
    def of(cls, algebra, A) -> ExponentSeq:
        if isinstance(A, ExponentSeq):
            return A
        return cls(AlgebraId.parse(algebra), tuple(tuple(int(e) for e in t) for t in A))

    def __len__(self) -> int:
        return len(self.A)

    def column(self, i: int) -> tuple[int, ...]:
        return tuple(t[i] for t in self.A)

    def total(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.A))

    def monomials(self) -> list[NormalMonomial]:
        return [NormalMonomial(self.algebra, t) for t in self.A]


def _seq(algebra: AlgebraId, A) -> ExponentSeq:
    seq = ExponentSeq.of(algebra, A)
    if seq.algebra != algebra:
        raise AlgebraError(f"expected a {algebra.value} exponent sequence, got {seq.algebra.value}")
    return seq


# --- q-oscillator: crossing maps ---------------------------------------------

INFINITY = None


@dataclass(frozen=True)
class CrossingMap:
    """A map ``p: V -> U + {inf}`` for the q-oscillator word ``x^{a_1} y^{b_1} x^{a_2} ...``.

    Ground-set elements are identified with their positions in that word, so
    the interleaved order on ``U`` and ``V`` is integer comparison.
    ``targets[r]`` is the image of the ``r``-th y (in word order), either the
    position of an x or ``None`` for infinity.
    """

    A: tuple[tuple[int, int], ...]
    targets: tuple[int | None, ...]

    def __post_init__(self):
        u_pos, v_pos = ground_sets(self.A)
        if len(self.targets) != len(v_pos):
            raise ValueError("one target per element of V required")
        block = _blocks(self.A)
        used = [t for t in self.targets if t is not None]
        if len(set(used)) != len(used):
            raise ValueError("p is not injective on p^-1(U)")
        for v, t in zip(v_pos, self.targets):
            if t is None:
                continue
            if t not in u_pos:
                raise ValueError(f"target {t} is not in U")
            if not block[v] < block[t]:
                raise ValueError("a y may only be matched with an x of a later factor")

    @property
    def k(self) -> int:
        return sum(t is not None for t in self.targets)


@lru_cache(maxsize=None)
def ground_sets(A: tuple[tuple[int, int], ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Positions of the x's (U) and the y's (V) in the word of ``A``."""
    u, v, pos = [], [], 0
    for a, b in A:
        u.extend(range(pos, pos + a))
        pos += a
        v.extend(range(pos, pos + b))
        pos += b
    return tuple(u), tuple(v)


@lru_cache(maxsize=None)
def _blocks(A: tuple[tuple[int, int], ...]) -> dict[int, int]:
    out, pos = {}, 0
    for i, (a, b) in enumerate(A):
        for _ in range(a + b):
            out[pos] = i
            pos += 1
    return out


def crossing_number(p: CrossingMap) -> int:
    """Count pairs (s, t) in V x U with s < t < p(s), t not hit by any y after s."""
    u_pos, v_pos = ground_sets(p.A)
    count = 0
    for r, (s, target) in enumerate(zip(v_pos, p.targets)):
        killed_later = {t for t in p.targets[r + 1 :] if t is not None}
        for t in u_pos:
            if s < t and (target is None or t < target) and t not in killed_later:
                count += 1
    return count


def crossing_maps(A, k: int | None = None) -> Iterator[CrossingMap]:
    """All maps in ``P_k(U, V)`` (or in every ``P_k`` when ``k`` is None)."""
    A = tuple(tuple(t) for t in A)
    u_pos, v_pos = ground_sets(A)
    block = _blocks(A)
    options = [[t for t in u_pos if block[t] > block[v]] for v in v_pos]

    def rec(r: int, used: frozenset, matched: int, acc: tuple):
        remaining = len(v_pos) - r
        if k is not None and (matched > k or matched + remaining < k):
            return
        if r == len(v_pos):
            yield CrossingMap(A, acc)
            return
        yield from rec(r + 1, used, matched, acc + (INFINITY,))
        for t in options[r]:
            if t not in used:
                yield from rec(r + 1, used | {t}, matched + 1, acc + (t,))

    yield from rec(0, frozenset(), 0, ())


def qo_normal_coords(A) -> dict[int, PolyQH]:
    """``N_qo(A, k)`` for every k with a nonzero value, by enumerating ``P_k(U, V)``."""
    seq = _seq(AlgebraId.Q_OSCILLATOR, A)
    out: dict[int, PolyQH] = {}
    for p in crossing_maps(seq.A):
        out[p.k] = out.get(p.k, ZERO) + q_power(crossing_number(p))
    return {k: v for k, v in sorted(out.items()) if v}


@lru_cache(maxsize=None)
def _qo_by_letters(letters: tuple[str, ...]) -> tuple[PolyQH, ...]:
    # coordinates of the word, indexed by k; built by prepending one letter at a time
    if not letters:
        return (ONE,)
    rest = _qo_by_letters(letters[1:])
    if letters[0] == "x":
        return rest
    xs = letters[1:].count("x")
    out = []
    for k in range(len(rest) + 1):
        val = ZERO
        if k < len(rest) and rest[k]:
            val = val + q_power(xs - k) * rest[k]
        if k >= 1 and rest[k - 1]:
            val = val + q_integer(xs - k + 1) * rest[k - 1]
        out.append(val)
    while len(out) > 1 and not out[-1]:
        out.pop()
    return tuple(out)


def qo_recursion_step(A, k: int) -> PolyQH:
    """``N_qo(A, k)`` computed by the prepend recursions.

    Prepending x leaves every coordinate unchanged; prepending y gives
    ``N(yA, k) = q^{|a|-k} N(A, k) + [|a|-k+1] N(A, k-1)``.
    """
    seq = _seq(AlgebraId.Q_OSCILLATOR, A)
    letters = tuple(itertools.chain.from_iterable("x" * a + "y" * b for a, b in seq.A))
    coords = _qo_by_letters(letters)
    return coords[k] if 0 <= k < len(coords) else ZERO


def qo_reconstruct(A, coords: dict[int, PolyQH]) -> NCPolynomial:
    seq = _seq(AlgebraId.Q_OSCILLATOR, A)
    a, b = seq.total()
    terms = {}
    for k, c in coords.items():
        terms[NormalMonomial(seq.algebra, (a - k, b - k))] = c * H**k
    return NCPolynomial(seq.algebra, terms)


# --- q-Weyl ------------------------------------------------------------------


def chi(I: Sequence[int], a: int) -> int:
    """Crossing number of a subset ``I`` of ``{1..a}``: pairs i > j, i in I, j not in I."""
    members = set(I)
    return sum(1 for i in members for j in range(1, i) if j not in members)


@lru_cache(maxsize=None)
def chi_k(a: int, k: int) -> PolyQH:
    """Sum of ``q^chi(I)`` over k-subsets ``I`` of ``{1..a}``."""
    if k < 0 or k > a:
        return ZERO
    total = ZERO
    for I in itertools.combinations(range(1, a + 1), k):
        total = total + q_power(chi(I, a))
    return total


def q_normal_coords(A) -> dict[tuple[int, ...], PolyQH]:
    """``N_q(A, k)`` for every admissible ``k`` in N^{n-1}."""
    seq = _seq(AlgebraId.Q_WEYL, A)
    a, b, c = seq.column(0), seq.column(1), seq.column(2)
    n = len(seq)
    out: dict[tuple[int, ...], PolyQH] = {}

    def rec(i: int, ks: tuple, k_sum: int, lam: int, coeff: PolyQH):
        # i is the 0-based index of the step merging factor i+1
        if i == n - 1:
            if coeff:
                out[ks] = q_power(lam) * coeff
            return
        c_le = sum(c[: i + 1])
        b_le = sum(b[: i + 1])
        z_avail = c_le - k_sum
        for ki in range(min(z_avail, a[i + 1]) + 1):
            step = b[i + 1] * (c_le - k_sum - ki) + (a[i + 1] - ki) * (b_le + k_sum)
            factor = chi_k(z_avail, ki) * q_falling(a[i + 1], ki)
            rec(i + 1, ks + (ki,), k_sum + ki, lam + step, coeff * factor)

    rec(0, (), 0, 0, ONE)
    return out


def q_reconstruct(A, coords: dict[tuple[int, ...], PolyQH]) -> NCPolynomial:
    seq = _seq(AlgebraId.Q_WEYL, A)
    a, b, c = seq.total()
    terms: dict[NormalMonomial, PolyQH] = {}
    for ks, coeff in coords.items():
        s = sum(ks)
        m = NormalMonomial(seq.algebra, (a - s, b + s, c - s))
        terms[m] = terms.get(m, ZERO) + coeff
    return NCPolynomial(seq.algebra, terms)


# --- h-Weyl ------------------------------------------------------------------


def weak_compositions(length: int, max_total: int) -> Iterator[tuple[int, ...]]:
    """Vectors of ``length`` nonnegative ints with sum at most ``max_total``."""
    if length == 0:
        yield ()
        return
    for first in range(max_total + 1):
        for rest in weak_compositions(length - 1, max_total - first):
            yield (first,) + rest


def support_size(v: Sequence[int]) -> int:
    return sum(1 for x in v if x)


HKey = tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]


def h_normal_coords(A) -> dict[HKey, int]:
    """``N_h(A, p, q)`` keyed by ``(p, q)`` with ``p = (p_1, ..., p_{n-1})`` a tuple of vectors."""
    seq = _seq(AlgebraId.H_WEYL, A)
    a, b, c = seq.column(0), seq.column(1), seq.column(2)
    n = len(seq)
    out: dict[HKey, int] = {}

    def rec(j: int, ps: tuple, qs: tuple, s_sum: int, coeff: int):
        if j == n - 1:
            out[(ps, qs)] = coeff
            return
        width = sum(b[: j + 1]) - s_sum
        z_count = sum(c[: j + 1]) + s_sum
        nxt = a[j + 1]
        for qj in range(nxt + 1):
            f1 = math.comb(nxt, qj) * z_count**qj
            if not f1:
                continue
            for pj in weak_compositions(width, nxt - qj):
                f2 = multinomial(nxt - qj, pj)
                rec(j + 1, ps + (pj,), qs + (qj,), s_sum + support_size(pj), coeff * f1 * f2)

    rec(0, (), (), 0, 1)
    return out


def h_monomial_data(A, p, q) -> tuple[tuple[int, int, int], int]:
    """Exponents ``r(A, p, q)`` and the power of h for one coordinate."""
    seq = _seq(AlgebraId.H_WEYL, A)
    a, b, c = seq.total()
    p_abs = sum(sum(v) for v in p)
    s = sum(support_size(v) for v in p)
    q_abs = sum(q)
    return (a - p_abs - q_abs, b - s, c + s), q_abs + p_abs - s


def h_reconstruct(A, coords: dict[HKey, int]) -> NCPolynomial:
    seq = _seq(AlgebraId.H_WEYL, A)
    terms: dict[NormalMonomial, PolyQH] = {}
    for (p, q), coeff in coords.items():
        r, h_deg = h_monomial_data(seq, p, q)
        m = NormalMonomial(seq.algebra, r)
        terms[m] = terms.get(m, ZERO) + PolyQH.monomial(0, h_deg, coeff)
    return NCPolynomial(seq.algebra, terms)


# --- U(sl2) ------------------------------------------------------------------

SL2Key = tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...], tuple[int, ...]]


def sl2_normal_coords(A) -> dict[SL2Key, int]:
    """``N_sl2(A, k, s, p, q)`` keyed by ``(k, s, p, q)``; zero values dropped."""
    seq = _seq(AlgebraId.SL2, A)
    a, b, c = seq.column(0), seq.column(1), seq.column(2)
    n = len(seq)
    out: dict[SL2Key, int] = {}

    def rec(i, ks, ss, ps, qs, coeff):
        if i == n - 1:
            if coeff:
                out[(ks, ss, ps, qs)] = coeff
            return
        c_le = sum(c[: i + 1])
        k_lt = sum(ks)
        z_avail = c_le - k_lt
        y_avail = sum(b[: i + 1]) + sum(ss) - sum(ps) - sum(qs)
        nxt_a, nxt_b = a[i + 1], b[i + 1]
        for ki in range(min(z_avail, nxt_a) + 1):
            alpha_num = falling(z_avail, ki) * falling(nxt_a, ki)
            alpha, rem = divmod(alpha_num, math.factorial(ki))
            assert rem == 0
            for si in range(ki + 1):
                beta = elem_sym(ki - si, ki, -nxt_a - c_le + k_lt + 2 * ki)
                if not alpha * beta:
                    continue
                for pi in range(nxt_b + 1):
                    fp = math.comb(nxt_b, pi) * (z_avail - ki) ** pi * (-2) ** pi
                    if not fp:
                        continue
                    for qi in range(y_avail + 1):
                        gamma = math.comb(y_avail, qi)
                        fq = gamma * (nxt_a - ki) ** qi * (-2) ** qi
                        if not fq:
                            continue
                        rec(
                            i + 1,
                            ks + (ki,),
                            ss + (si,),
                            ps + (pi,),
                            qs + (qi,),
                            coeff * alpha * beta * fp * fq,
                        )

    rec(0, (), (), (), (), 1)
    return out


def sl2_reconstruct(A, coords: dict[SL2Key, int]) -> NCPolynomial:
    seq = _seq(AlgebraId.SL2, A)
    a, b, c = seq.total()
    terms: dict[NormalMonomial, PolyQH] = {}
    for (ks, ss, ps, qs), coeff in coords.items():
        k = sum(ks)
        m = NormalMonomial(seq.algebra, (a - k, b + sum(ss) - sum(ps) - sum(qs), c - k))
        terms[m] = terms.get(m, ZERO) + coeff
    return NCPolynomial(seq.algebra, terms)


# --- dispatch ----------------------------------------------------------------

_COORDS = {
    AlgebraId.Q_OSCILLATOR: (qo_normal_coords, qo_reconstruct),
    AlgebraId.Q_WEYL: (q_normal_coords, q_reconstruct),
    AlgebraId.H_WEYL: (h_normal_coords, h_reconstruct),
    AlgebraId.SL2: (sl2_normal_coords, sl2_reconstruct),
}


def has_closed_form(algebra) -> bool:
    return AlgebraId.parse(algebra) in _COORDS


def normal_coords(algebra, A) -> dict:
    algebra = AlgebraId.parse(algebra)
    if algebra not in _COORDS:
        raise AlgebraError(f"{algebra.value} has no closed-form normal coordinates")
    return _COORDS[algebra][0](A)


def reconstruct(algebra, A, coords: dict) -> NCPolynomial:
    algebra = AlgebraId.parse(algebra)
    if algebra not in _COORDS:
        raise AlgebraError(f"{algebra.value} has no closed-form normal coordinates")
    return _COORDS[algebra][1](A, coords)


@lru_cache(maxsize=100_000)
def _closed_form_product(algebra: AlgebraId, A: tuple) -> NCPolynomial:
    return reconstruct(algebra, A, normal_coords(algebra, A))


def closed_form_product(algebra, A) -> NCPolynomial:
    """Normal form of ``X^{A_1} ... X^{A_n}`` assembled from closed-form coordinates."""
    seq = ExponentSeq.of(algebra, A)
    return _closed_form_product(seq.algebra, seq.A)


def _vec(v: Sequence[int]) -> str:
    return ",".join(str(x) for x in v)


def coord_key(algebra, key) -> str:
    """Text form of a coordinate index.

    q-oscillator ``k`` -> ``"k"``; q-Weyl ``k`` -> ``"k1,k2"``;
    h-Weyl ``(p, q)`` -> ``"p1/p2;q"`` with each ``p_j`` comma-joined;
    sl2 ``(k, s, p, q)`` -> ``"k;s;p;q"``.
    """
    algebra = AlgebraId.parse(algebra)
    if algebra is AlgebraId.Q_OSCILLATOR:
        return str(key)
    if algebra is AlgebraId.Q_WEYL:
        return _vec(key)
    if algebra is AlgebraId.H_WEYL:
        p, q = key
        return "/".join(_vec(v) for v in p) + ";" + _vec(q)
    if algebra is AlgebraId.SL2:
        return ";".join(_vec(v) for v in key)
    raise AlgebraError(f"{algebra.value} has no closed-form normal coordinates")


def coords_to_json(algebra, coords: dict) -> dict[str, str]:
    return {coord_key(algebra, k): str(PolyQH.coerce(v)) for k, v in sorted(coords.items())}


# --- two-letter expansions ---------------------------------------------------


def base_expand(algebra, left: str, a: int, right: str, b: int) -> NCPolynomial:
    """Closed-form normal form of ``left^a right^b`` for an out-of-order letter pair."""
    algebra = AlgebraId.parse(algebra)
    if algebra not in (AlgebraId.Q_WEYL, AlgebraId.H_WEYL, AlgebraId.SL2):
        raise AlgebraError(f"no two-letter expansion table for {algebra.value}")
    pair = left + right
    if pair not in ("zx", "zy", "yx"):
        raise AlgebraError(f"{left}{right} is not an out-of-order pair")

    def mono(x, y, z):
        return NormalMonomial(algebra, (x, y, z))

    terms: dict[NormalMonomial, PolyQH] = {}

    def add(m, c):
        terms[m] = terms.get(m, ZERO) + PolyQH.coerce(c)

    if algebra is AlgebraId.Q_WEYL:
        if pair == "zx":
            for k in range(min(a, b) + 1):
                add(mono(b - k, k, a - k), chi_k(a, k) * q_falling(b, k))
        elif pair == "zy":
            add(mono(0, b, a), q_power(a * b))
        else:
            add(mono(b, a, 0), q_power(a * b))
    elif algebra is AlgebraId.H_WEYL:
        if pair == "zx":
            for k in range(b + 1):
                add(mono(b - k, 0, a), PolyQH.monomial(0, k, math.comb(b, k) * a**k))
        elif pair == "zy":
            add(mono(0, b, a), ONE)
        else:
            for k in weak_compositions(a, b):
                s = support_size(k)
                add(mono(b - sum(k), a - s, s), PolyQH.monomial(0, sum(k) - s, multinomial(b, k)))
    else:
        if pair == "zx":
            for k in range(min(a, b) + 1):
                for s in range(k + 1):
                    coeff = falling(a, k) * falling(b, k) // math.factorial(k)
                    coeff *= elem_sym(k - s, k, -a - b + 2 * k)
                    add(mono(b - k, s, a - k), coeff)
        elif pair == "zy":
            for k in range(b + 1):
                add(mono(0, b - k, a), math.comb(b, k) * (-2 * a) ** k)
        else:
            for k in range(a + 1):
                add(mono(b, a - k, 0), math.comb(a, k) * (-2 * b) ** k)
    return NCPolynomial(algebra, terms)
