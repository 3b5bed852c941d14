"""Text front-end for words and symmetric-power products.

Grammar (whitespace insignificant)::

    word    := term+
    term    := letter ('^' uint)? | '1'
    class   := '[' word (',' word)* ']'
    symexpr := class ('*' class)*
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .algebra import AlgebraId, LETTERS, Word

CENTRAL = ("q", "h")


class ParseError(ValueError):
    def __init__(self, message: str, position: int, expected: tuple[str, ...] = (), code: str = "parse-error"):
        super().__init__(message)
        self.message = message
        self.position = position
        self.expected = expected
        self.code = code

    def __str__(self) -> str:
        text = f"{self.message} at position {self.position}"
        if self.expected:
            text += f" (expected {' or '.join(self.expected)})"
        return text


@dataclass(frozen=True)
class WordExpr:
    algebra: AlgebraId
    letters: tuple[str, ...]

    def word(self) -> Word:
        return Word(self.algebra, self.letters)


@dataclass(frozen=True)
class SymExpr:
    algebra: AlgebraId
    arity: int
    classes: tuple[tuple[tuple[str, ...], ...], ...]


Expr = Union[WordExpr, SymExpr]

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<letter>[A-Za-z])|(?P<punct>[\^\[\],*]))")


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m:
            start = pos + len(src[pos:]) - len(src[pos:].lstrip())
            raise ParseError(f"unexpected character {src[start]!r}", start)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, algebra: AlgebraId):
        self.tokens = _tokenize(src)
        self.i = 0
        self.algebra = algebra
        self.letters = LETTERS[algebra]

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_punct(self, p: str):
        kind, val, pos = self.take()
        if kind != "punct" or val != p:
            raise ParseError(f"unexpected {_describe(kind, val)}", pos, (repr(p),))

    def at_term(self) -> bool:
        kind, val, _ = self.peek()
        return kind == "letter" or (kind == "num" and val == "1")

    def word(self) -> tuple[str, ...]:
        if not self.at_term():
            kind, val, pos = self.peek()
            raise ParseError(f"unexpected {_describe(kind, val)}", pos, ("a letter", "'1'"))
        out: list[str] = []
        while self.at_term():
            out.extend(self.term())
        return tuple(out)

    def term(self) -> list[str]:
        kind, val, pos = self.take()
        if kind == "num":
            return []
        if val not in self.letters:
            hint = " (q and h are central parameters, not letters)" if val in CENTRAL else ""
            raise ParseError(
                f"unknown letter {val!r} for {self.algebra.value}{hint}",
                pos,
                tuple(repr(c) for c in self.letters),
                code="unknown-letter",
            )
        exp = 1
        if self.peek()[:2] == ("punct", "^"):
            self.take()
            kind, num, npos = self.take()
            if kind != "num":
                raise ParseError(
                    f"malformed exponent {_describe(kind, num)}", npos, ("a nonnegative integer",),
                    code="bad-exponent",
                )
            exp = int(num)
        return [val] * exp

    def sym_class(self) -> tuple[tuple[str, ...], ...]:
        self.expect_punct("[")
        words = [self.word()]
        while self.peek()[:2] == ("punct", ","):
            self.take()
            words.append(self.word())
        self.expect_punct("]")
        return tuple(words)

    def finish(self):
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {_describe(kind, val)}", pos, ("end of input",))


def _describe(kind: str, val: str) -> str:
    return "end of input" if kind == "end" else repr(val)


def parse(src: str, algebra, arity: int | None = None) -> Expr:
    """Parse a word, or a product of bracketed classes when the input starts with '['."""
    algebra = AlgebraId.parse(algebra)
    p = _Parser(src, algebra)
    if p.peek()[:2] != ("punct", "["):
        letters = p.word()
        p.finish()
        return WordExpr(algebra, letters)
    classes = []
    first_pos = p.peek()[2]
    classes.append(p.sym_class())
    while p.peek()[:2] == ("punct", "*"):
        p.take()
        pos = p.peek()[2]
        cls = p.sym_class()
        if len(cls) != len(classes[0]):
            raise ParseError(
                f"class has {len(cls)} entries, expected {len(classes[0])}", pos, code="arity-mismatch"
            )
        classes.append(cls)
    p.finish()
    n = len(classes[0])
    if arity is not None and n != arity:
        raise ParseError(f"classes have {n} entries but arity is {arity}", first_pos, code="arity-mismatch")
    return SymExpr(algebra, n, tuple(classes))


def parse_word(src: str, algebra) -> WordExpr:
    expr = parse(src, algebra)
    if not isinstance(expr, WordExpr):
        raise ParseError("expected a word, got a symmetric-power expression", 0)
    return expr


def render_word(letters: tuple[str, ...]) -> str:
    if not letters:
        return "1"
    parts = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        run = j - i
        parts.append(letters[i] if run == 1 else f"{letters[i]}^{run}")
        i = j
    return " ".join(parts)


def render(expr: Expr) -> str:
    if isinstance(expr, WordExpr):
        return render_word(expr.letters)
    return " * ".join("[" + ", ".join(render_word(w) for w in cls) + "]" for cls in expr.classes)


_TUPLE = re.compile(r"\(([^()]*)\)")


def parse_factors(src: str) -> tuple[tuple[int, ...], ...]:
    """Parse ``"(0,0,1),(2,0,0)"`` into a tuple of exponent tuples."""
    out = []
    pos = 0
    for m in _TUPLE.finditer(src):
        gap = src[pos : m.start()].strip()
        if gap not in ("", ","):
            raise ParseError(f"unexpected {gap!r} between factors", pos)
        try:
            t = tuple(int(x) for x in m.group(1).split(","))
        except ValueError:
            raise ParseError(f"malformed factor {m.group(0)!r}", m.start(), ("comma-separated integers",)) from None
        if any(e < 0 for e in t):
            raise ParseError(f"negative exponent in {m.group(0)!r}", m.start(), code="bad-exponent")
        out.append(t)
        pos = m.end()
    if src[pos:].strip() not in ("", ","):
        raise ParseError(f"unexpected {src[pos:].strip()!r}", pos, ("'('",))
    if not out:
        raise ParseError("no factors given", 0, ("'('",))
    return tuple(out)
