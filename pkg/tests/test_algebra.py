import itertools

import pytest

from qweyl.algebra import (
    AlgebraError,
    AlgebraId,
    LETTERS,
    NCPolynomial,
    Word,
    decreases,
    monomial,
    presentation,
    rule_table,
    unit,
    word_of,
)
from qweyl.coeffs import H, ONE, Q

from conftest import poly


def _rules(algebra):
    return {
        "".join(r.lhs): {("".join(w)): c for w, c in r.rhs} for r in presentation(algebra)
    }


def test_presentation_examples():
    assert _rules("q-oscillator") == {"yx": {"xy": Q, "": H}}
    assert _rules("q-weyl") == {"zx": {"xz": ONE, "y": ONE}, "yx": {"xy": Q}, "zy": {"yz": Q}}
    assert _rules("sl2") == {"zx": {"xz": ONE, "y": ONE}, "yx": {"xy": ONE, "x": -2 * ONE}, "zy": {"yz": ONE, "z": -2 * ONE}}


@pytest.mark.parametrize("algebra", list(AlgebraId))
def test_every_out_of_order_pair_has_one_rule(algebra):
    letters = LETTERS[algebra]
    wanted = {(b, a) for a, b in itertools.combinations(letters, 2)}
    lhs = [r.lhs for r in presentation(algebra)]
    assert sorted(lhs) == sorted(wanted)
    assert set(rule_table(algebra)) == wanted


@pytest.mark.parametrize("algebra", list(AlgebraId))
def test_termination_witnesses(algebra):
    for rule in presentation(algebra):
        for w, _ in rule.rhs:
            assert decreases(algebra, rule.lhs, w)


def test_bad_rule_rejected():
    from qweyl.algebra import RewriteRule

    with pytest.raises(AlgebraError):
        RewriteRule(AlgebraId.Q_OSCILLATOR, ("y", "x"), ((("y", "x"), ONE),))


@pytest.mark.parametrize(
    "algebra, exps, word",
    [
        ("q-weyl", (1, 0, 2), ("x", "z", "z")),
        ("q-oscillator", (0, 0), ()),
        ("sl2", (2, 1, 1), ("x", "x", "y", "z")),
    ],
)
def test_word_of(algebra, exps, word):
    assert word_of(monomial(algebra, exps)).letters == word


def test_monomial_validation():
    with pytest.raises(AlgebraError):
        monomial("q-weyl", (1, 2))
    with pytest.raises(AlgebraError):
        monomial("weyl", (-1, 0))
    with pytest.raises(AlgebraError):
        Word(AlgebraId.WEYL, ("z",))


def test_algebra_parse():
    assert AlgebraId.parse("h-weyl") is AlgebraId.H_WEYL
    with pytest.raises(AlgebraError):
        AlgebraId.parse("clifford")


def test_canonicalize_idempotent():
    p = poly("sl2", {(0, 1, 0): 3, (1, 0, 1): -1, (0, 0, 0): Q, (2, 0, 0): 0})
    once = p.canonicalize()
    assert once.canonicalize() == once == p
    assert [m.exps for m, _ in once.sorted_terms()] == [(1, 0, 1), (0, 1, 0), (0, 0, 0)]


def test_polynomial_json():
    p = poly("q-oscillator", {(1, 1): Q, (0, 0): H})
    assert p.to_json() == {
        "algebra": "q-oscillator",
        "terms": [{"exps": [1, 1], "coeff": "q"}, {"exps": [0, 0], "coeff": "h"}],
    }
    assert NCPolynomial.one("weyl").to_json()["terms"] == [{"exps": [0, 0], "coeff": "1"}]
    assert unit("sl2").is_unit()
