"""Presentations of the five built-in algebras.

Every algebra is a quotient of a free algebra on ordered letters by
two-letter rewrite rules.  The central parameters ``q`` and ``h`` are never
letters; they only occur inside :class:`~qweyl.coeffs.PolyQH` coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .coeffs import ONE, PolyQH, H, Q, ZERO


class AlgebraError(ValueError):
    """Malformed algebra input: unknown letter, wrong arity, mixed algebras."""


class AlgebraId(str, Enum):
    WEYL = "weyl"
    Q_OSCILLATOR = "q-oscillator"
    Q_WEYL = "q-weyl"
    H_WEYL = "h-weyl"
    SL2 = "sl2"

    def __str__(self) -> str:
        return self.value

    @property
    def letters(self) -> tuple[str, ...]:
        return LETTERS[self]

    @classmethod
    def parse(cls, name) -> AlgebraId:
        if isinstance(name, cls):
            return name
        try:
            return cls(name)
        except ValueError:
            known = ", ".join(a.value for a in cls)
            raise AlgebraError(f"unknown algebra {name!r} (expected one of {known})") from None


LETTERS = {
    AlgebraId.WEYL: ("x", "y"),
    AlgebraId.Q_OSCILLATOR: ("x", "y"),
    AlgebraId.Q_WEYL: ("x", "y", "z"),
    AlgebraId.H_WEYL: ("x", "y", "z"),
    AlgebraId.SL2: ("x", "y", "z"),
}


def letter_index(algebra: AlgebraId, letter: str) -> int:
    try:
        return LETTERS[algebra].index(letter)
    except ValueError:
        raise AlgebraError(f"letter {letter!r} is not a generator of {algebra.value}") from None


@dataclass(frozen=True)
class NormalMonomial:
    """A normally ordered monomial ``x^a y^b [z^c]``."""

    algebra: AlgebraId
    exps: tuple[int, ...]

    def __post_init__(self):
        if len(self.exps) != len(LETTERS[self.algebra]):
            raise AlgebraError(
                f"{self.algebra.value} monomials take {len(LETTERS[self.algebra])} exponents, "
                f"got {len(self.exps)}"
            )
        if any(e < 0 for e in self.exps):
            raise AlgebraError(f"negative exponent in {self.exps}")

    def sort_key(self) -> tuple:
        # graded lexicographic
        return (sum(self.exps), self.exps)

    def __lt__(self, other: NormalMonomial) -> bool:
        return self.sort_key() < other.sort_key()

    def is_unit(self) -> bool:
        return not any(self.exps)

    def __str__(self) -> str:
        parts = []
        for letter, e in zip(LETTERS[self.algebra], self.exps):
            if e == 1:
                parts.append(letter)
            elif e > 1:
                parts.append(f"{letter}^{e}")
        return " ".join(parts) or "1"


@dataclass(frozen=True)
class Word:
    """A word in the generators of an algebra (an element of the free algebra)."""

    algebra: AlgebraId
    letters: tuple[str, ...]

    def __post_init__(self):
        for letter in self.letters:
            letter_index(self.algebra, letter)

    def __add__(self, other: Word) -> Word:
        if other.algebra != self.algebra:
            raise AlgebraError("cannot concatenate words of different algebras")
        return Word(self.algebra, self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(self.letters) or "1"


def monomial(algebra, exps: Sequence[int]) -> NormalMonomial:
    return NormalMonomial(AlgebraId.parse(algebra), tuple(int(e) for e in exps))


def unit(algebra) -> NormalMonomial:
    algebra = AlgebraId.parse(algebra)
    return NormalMonomial(algebra, (0,) * len(LETTERS[algebra]))


def word_of(m: NormalMonomial) -> Word:
    letters: list[str] = []
    for letter, e in zip(LETTERS[m.algebra], m.exps):
        letters.extend([letter] * e)
    return Word(m.algebra, tuple(letters))


def inversions(algebra: AlgebraId, letters: Sequence[str]) -> int:
    idx = [letter_index(algebra, c) for c in letters]
    return sum(1 for i in range(len(idx)) for j in range(i + 1, len(idx)) if idx[i] > idx[j])


def is_normal(algebra: AlgebraId, letters: Sequence[str]) -> bool:
    order = LETTERS[algebra]
    return all(order.index(a) <= order.index(b) for a, b in zip(letters, letters[1:]))


def monomial_of_normal_word(algebra: AlgebraId, letters: Sequence[str]) -> NormalMonomial:
    order = LETTERS[algebra]
    return NormalMonomial(algebra, tuple(letters.count(c) for c in order))


class NCPolynomial:
    """Finite linear combination of normal monomials over ``PolyQH``."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra, terms: Mapping[NormalMonomial, PolyQH] | None = None):
        self.algebra = AlgebraId.parse(algebra)
        clean: dict[NormalMonomial, PolyQH] = {}
        for m, c in (terms or {}).items():
            if m.algebra != self.algebra:
                raise AlgebraError(f"monomial of {m.algebra.value} in a {self.algebra.value} polynomial")
            c = PolyQH.coerce(c)
            if c:
                clean[m] = c
        self._terms = clean

    @classmethod
    def from_monomial(cls, m: NormalMonomial, coeff=ONE) -> NCPolynomial:
        return cls(m.algebra, {m: coeff})

    @classmethod
    def one(cls, algebra) -> NCPolynomial:
        return cls.from_monomial(unit(algebra))

    @property
    def terms(self) -> dict[NormalMonomial, PolyQH]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, m: NormalMonomial) -> PolyQH:
        return self._terms.get(m, ZERO)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: NCPolynomial):
        if other.algebra != self.algebra:
            raise AlgebraError(f"algebra mismatch: {self.algebra.value} vs {other.algebra.value}")

    def __add__(self, other: NCPolynomial) -> NCPolynomial:
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, ZERO) + c
        return NCPolynomial(self.algebra, out)

    def __neg__(self) -> NCPolynomial:
        return NCPolynomial(self.algebra, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: NCPolynomial) -> NCPolynomial:
        return self + (-other)

    def scale(self, c) -> NCPolynomial:
        c = PolyQH.coerce(c)
        return NCPolynomial(self.algebra, {m: v * c for m, v in self._terms.items()})

    def subs(self, q=None, h=None) -> NCPolynomial:
        return NCPolynomial(self.algebra, {m: c.subs(q=q, h=h) for m, c in self._terms.items()})

    def canonicalize(self) -> NCPolynomial:
        return NCPolynomial(self.algebra, dict(self.sorted_terms()))

    def sorted_terms(self) -> list[tuple[NormalMonomial, PolyQH]]:
        """Terms in descending graded-lexicographic order."""
        return sorted(self._terms.items(), key=lambda t: t[0].sort_key(), reverse=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.algebra, frozenset(self._terms.items())))

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.value,
            "terms": [{"exps": list(m.exps), "coeff": str(c)} for m, c in self.sorted_terms()],
        }

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for m, c in self.sorted_terms():
            if c == ONE:
                out.append(str(m))
            elif m.is_unit():
                out.append(f"({c})")
            else:
                out.append(f"({c})*{m}")
        return " + ".join(out)

    def __repr__(self) -> str:
        return f"NCPolynomial({self.algebra.value}: {self})"


@dataclass(frozen=True)
class RewriteRule:
    """Oriented relation ``lhs -> sum(coeff * word)`` for an out-of-order pair."""

    algebra: AlgebraId
    lhs: tuple[str, str]
    rhs: tuple[tuple[tuple[str, ...], PolyQH], ...]

    def __post_init__(self):
        a, b = (letter_index(self.algebra, c) for c in self.lhs)
        if a <= b:
            raise AlgebraError(f"rule lhs {''.join(self.lhs)} is already normally ordered")
        lhs_inv = inversions(self.algebra, self.lhs)
        for word, coeff in self.rhs:
            for c in word:
                letter_index(self.algebra, c)
            if not coeff:
                raise AlgebraError("zero coefficient in rule right-hand side")
            if not decreases(self.algebra, self.lhs, word, lhs_inv):
                raise AlgebraError(
                    f"rule {''.join(self.lhs)} -> {''.join(word) or '1'} has no termination witness"
                )


def decreases(algebra: AlgebraId, old: Sequence[str], new: Sequence[str], old_inv: int | None = None) -> bool:
    """True when ``new`` is smaller than ``old`` in (length, inversions) order."""
    if len(new) != len(old):
        return len(new) < len(old)
    if old_inv is None:
        old_inv = inversions(algebra, old)
    return inversions(algebra, new) < old_inv


def _rule(algebra: AlgebraId, lhs: str, rhs: Iterable[tuple[str, PolyQH]]) -> RewriteRule:
    return RewriteRule(algebra, (lhs[0], lhs[1]), tuple((tuple(w), PolyQH.coerce(c)) for w, c in rhs))


@lru_cache(maxsize=None)
def _presentation(algebra: AlgebraId) -> tuple[RewriteRule, ...]:
    A = AlgebraId
    if algebra is A.WEYL:
        rules = [_rule(algebra, "yx", [("xy", ONE), ("", H)])]
    elif algebra is A.Q_OSCILLATOR:
        rules = [_rule(algebra, "yx", [("xy", Q), ("", H)])]
    elif algebra is A.Q_WEYL:
        rules = [
            _rule(algebra, "zx", [("xz", ONE), ("y", ONE)]),
            _rule(algebra, "yx", [("xy", Q)]),
            _rule(algebra, "zy", [("yz", Q)]),
        ]
    elif algebra is A.H_WEYL:
        rules = [
            _rule(algebra, "yx", [("xy", ONE), ("z", ONE)]),
            _rule(algebra, "zx", [("xz", ONE), ("z", H)]),
            _rule(algebra, "zy", [("yz", ONE)]),
        ]
    elif algebra is A.SL2:
        rules = [
            _rule(algebra, "zx", [("xz", ONE), ("y", ONE)]),
            _rule(algebra, "yx", [("xy", ONE), ("x", -2)]),
            _rule(algebra, "zy", [("yz", ONE), ("z", -2)]),
        ]
    else:  # pragma: no cover - closed enum
        raise AlgebraError(f"no presentation for {algebra}")
    return tuple(rules)


def presentation(algebra) -> list[RewriteRule]:
    """The oriented defining relations: one rule per out-of-order letter pair."""
    return list(_presentation(AlgebraId.parse(algebra)))


def rule_table(algebra, rules: Iterable[RewriteRule] | None = None) -> dict[tuple[str, str], RewriteRule]:
    algebra = AlgebraId.parse(algebra)
    table: dict[tuple[str, str], RewriteRule] = {}
    for r in presentation(algebra) if rules is None else rules:
        if r.lhs in table:
            raise AlgebraError(f"duplicate rule for {''.join(r.lhs)}")
        table[r.lhs] = r
    return table
