"""Command-line interface: ``qweyl <command> ...``, one JSON document on stdout."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .algebra import AlgebraError, AlgebraId, LETTERS, Word, letter_index
from .checks import SUITES, Bounds, run_suite
from .closed_forms import closed_form_product, coords_to_json, has_closed_form, normal_coords
from .parser import ParseError, SymExpr, WordExpr, parse, parse_factors
from .rewrite import normal_order
from .sympower import SizeError, SymElement, sym_product


class CliError(Exception):
    def __init__(self, code: str, message: str, position: int | None = None, **extra):
        super().__init__(message)
        self.payload = {"code": code, "message": message}
        if position is not None:
            self.payload["position"] = position
        self.payload.update(extra)


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message)


def dumps(doc) -> str:
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False)


def factor_runs(w: Word) -> tuple[tuple[int, ...], ...]:
    """Split a word into maximal normally ordered runs, as exponent tuples."""
    letters = LETTERS[w.algebra]
    runs: list[list[int]] = []
    last = None
    for c in w.letters:
        idx = letter_index(w.algebra, c)
        if last is None or idx < last:
            runs.append([0] * len(letters))
        runs[-1][idx] += 1
        last = idx
    return tuple(tuple(r) for r in runs) or ((0,) * len(letters),)


def cmd_normalize(args) -> dict:
    algebra = AlgebraId.parse(args.algebra)
    expr = parse(args.expr, algebra)
    if not isinstance(expr, WordExpr):
        raise CliError("bad-expression", "normalize takes a word, not a symmetric-power product")
    word = expr.word()
    oracle = normal_order(word)
    result = oracle
    if args.closed_form and has_closed_form(algebra):
        result = closed_form_product(algebra, factor_runs(word))
        if result != oracle:
            raise CliError(
                "engine-mismatch",
                "closed-form and rewrite normal forms differ",
                closed_form=str(result),
                oracle=str(oracle),
            )
    return result.to_json()


def cmd_coeffs(args) -> dict:
    algebra = AlgebraId.parse(args.algebra)
    if not has_closed_form(algebra):
        raise CliError("no-closed-form", f"{algebra.value} has no closed-form normal coordinates")
    A = parse_factors(args.factors)
    width = len(LETTERS[algebra])
    for t in A:
        if len(t) != width:
            raise CliError("arity", f"{algebra.value} factors have {width} exponents, got {t}")
    return coords_to_json(algebra, normal_coords(algebra, A))


def cmd_symprod(args) -> dict:
    algebra = AlgebraId.parse(args.algebra)
    expr = parse(args.expr, algebra, args.arity)
    if isinstance(expr, WordExpr):
        if args.arity != 1:
            raise CliError("bad-expression", "symprod takes bracketed classes, e.g. [x, 1] * [y, 1]")
        expr = SymExpr(algebra, 1, ((expr.letters,),))
    factors = [
        SymElement.from_polys([normal_order(Word(algebra, w)) for w in cls]) for cls in expr.classes
    ]
    return sym_product(factors, closed_form=not args.oracle).to_json()


def _bounds(args) -> Bounds:
    b = Bounds()
    if getattr(args, "max_exp", None) is not None:
        b.max_exp = args.max_exp
    if getattr(args, "max_factors", None) is not None:
        b.max_factors = args.max_factors
    if getattr(args, "max_t", None) is not None:
        b.max_t = args.max_t
    return b


def _report(suite: str, bounds: Bounds, progress: bool) -> dict:
    def show(result):
        if progress:
            print(result.line(), file=sys.stderr, flush=True)

    results = run_suite(suite, bounds, on_result=show)
    report = {
        "pass": all(r.passed for r in results),
        "checked": sum(r.checked for r in results),
        "suite": suite,
        "results": [r.to_json() for r in results],
    }
    if not report["pass"]:
        raise CliError("verification-failed", f"suite {suite} found a counterexample", report=report)
    return report


def cmd_verify(args) -> dict:
    return _report(args.suite, _bounds(args), args.progress)


def cmd_selftest(args) -> dict:
    return _report("all", Bounds(), not args.quiet)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="qweyl", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)
    algebras = [a.value for a in AlgebraId]

    p = sub.add_parser("normalize", help="normal-order a word")
    p.add_argument("--algebra", required=True, choices=algebras)
    p.add_argument("--closed-form", action="store_true", help="use closed-form coordinates and check them")
    p.add_argument("expr")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("coeffs", help="closed-form normal coordinates of a product")
    p.add_argument("--algebra", required=True, choices=algebras)
    p.add_argument("--factors", required=True, help='exponent tuples, e.g. "(0,0,1),(2,0,0)"')
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("symprod", help="product in the symmetric power Sym^n")
    p.add_argument("--algebra", required=True, choices=algebras)
    p.add_argument("--arity", required=True, type=int)
    p.add_argument("--oracle", action="store_true", help="compute slot products by rewriting only")
    p.add_argument("expr")
    p.set_defaults(func=cmd_symprod)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=list(SUITES))
    p.add_argument("--max-exp", type=int)
    p.add_argument("--max-factors", type=int)
    p.add_argument("--max-t", type=int)
    p.add_argument("--progress", action="store_true", help="print one line per check on stderr")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selftest", help="run every acceptance check at default bounds")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        doc = args.func(args)
    except CliError as e:
        print(dumps(e.payload))
        return 1
    except ParseError as e:
        print(dumps({"code": e.code, "message": str(e), "position": e.position}))
        return 1
    except SizeError as e:
        print(dumps({"code": "too-large", "message": str(e)}))
        return 1
    except AlgebraError as e:
        print(dumps({"code": "algebra", "message": str(e)}))
        return 1
    print(dumps(doc))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
