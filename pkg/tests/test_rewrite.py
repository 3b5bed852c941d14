import itertools
import random

import pytest

from qweyl.algebra import AlgebraError, AlgebraId, LETTERS, Word, monomial, unit
from qweyl.coeffs import H, ONE, Q
from qweyl.rewrite import (
    TensorElement,
    multiply,
    normal_order,
    symmetrize,
    tensor_multiply,
    tensor_unit,
)

from conftest import poly


def W(algebra, text):
    return Word(AlgebraId.parse(algebra), tuple(text.split()))


@pytest.mark.parametrize(
    "algebra, word, expected",
    [
        ("q-oscillator", "y x", {(1, 1): Q, (0, 0): H}),
        ("q-weyl", "z x x", {(2, 0, 1): 1, (1, 1, 0): 1 + Q}),
        ("h-weyl", "y x", {(1, 1, 0): 1, (0, 0, 1): 1}),
        ("weyl", "y x", {(1, 1): 1, (0, 0): H}),
        ("sl2", "z y", {(0, 1, 1): 1, (0, 0, 1): -2}),
        ("sl2", "x y z", {(1, 1, 1): 1}),
    ],
)
def test_normal_order_examples(algebra, word, expected):
    assert normal_order(W(algebra, word)) == poly(algebra, expected)


def test_empty_word_is_unit():
    assert normal_order(Word(AlgebraId.SL2, ())) == poly("sl2", {(0, 0, 0): 1})


def test_unknown_strategy():
    with pytest.raises(ValueError):
        normal_order(W("weyl", "y x"), strategy="outermost")


def test_multiply_examples():
    one = poly("sl2", {(0, 0, 0): 1})
    p = poly("sl2", {(1, 0, 1): Q, (0, 2, 0): 3})
    assert multiply(one, p) == p == multiply(p, one)
    assert multiply(poly("q-oscillator", {(0, 1): 1}), poly("q-oscillator", {(1, 0): 1})) == poly(
        "q-oscillator", {(1, 1): Q, (0, 0): H}
    )
    assert multiply(poly("sl2", {(0, 0, 1): 1}), poly("sl2", {(0, 1, 0): 1})) == poly(
        "sl2", {(0, 1, 1): 1, (0, 0, 1): -2}
    )
    with pytest.raises(AlgebraError):
        multiply(one, poly("weyl", {(0, 0): 1}))


def _random_words(algebra, count, max_len, seed):
    rng = random.Random(f"{seed}:{algebra.value}")
    letters = LETTERS[algebra]
    for _ in range(count):
        yield Word(algebra, tuple(rng.choices(letters, k=rng.randint(0, max_len))))


@pytest.mark.parametrize("algebra", list(AlgebraId))
def test_confluence(algebra):
    for w in _random_words(algebra, 200, 8, seed=7):
        left = normal_order(w, strategy="leftmost", check_termination=True)
        right = normal_order(w, strategy="rightmost", check_termination=True)
        assert left == right, str(w)


WEIGHTS = {
    AlgebraId.WEYL: ({"x": 1, "y": -1}, 0),
    AlgebraId.Q_OSCILLATOR: ({"x": 1, "y": -1}, 0),
    AlgebraId.Q_WEYL: ({"x": 1, "y": 0, "z": -1}, 0),
    AlgebraId.SL2: ({"x": 1, "y": 0, "z": -1}, 0),
    AlgebraId.H_WEYL: ({"x": 1, "y": -1, "z": 0}, 1),
}


@pytest.mark.parametrize("algebra", list(AlgebraId))
def test_grading_is_conserved(algebra):
    wt, h_weight = WEIGHTS[algebra]
    letters = LETTERS[algebra]
    for n in range(7):
        for w in itertools.product(letters, repeat=n):
            target = sum(wt[c] for c in w)
            for m, c in normal_order(Word(algebra, w)).items():
                base = sum(wt[l] * e for l, e in zip(letters, m.exps))
                for (_, dh), _ in c.items():
                    assert base + h_weight * dh == target, (w, m, c)


def test_tensor_examples():
    x, y, one = (monomial("q-oscillator", e) for e in [(1, 0), (0, 1), (0, 0)])
    xy = monomial("q-oscillator", (1, 1))
    assert tensor_multiply(TensorElement.pure([x, one]), TensorElement.pure([one, y])) == TensorElement.pure([x, y])
    lhs = tensor_multiply(TensorElement.pure([y, one]), TensorElement.pure([x, one]))
    assert lhs == TensorElement("q-oscillator", 2, {(xy, one): Q, (one, one): H})
    t = TensorElement("q-oscillator", 2, {(x, y): 3, (xy, x): Q})
    assert tensor_multiply(tensor_unit("q-oscillator", 2), t) == t == tensor_multiply(t, tensor_unit("q-oscillator", 2))


def test_symmetrize_examples():
    x, one = monomial("weyl", (1, 0)), unit("weyl")
    assert symmetrize([x]) == TensorElement.pure([x])
    half = ONE / 2
    assert symmetrize([x, one]) == TensorElement("weyl", 2, {(x, one): half, (one, x): half})
    assert symmetrize([x, x]) == TensorElement.pure([x, x])
    assert symmetrize([x, one]).is_invariant()
    assert not TensorElement.pure([x, one]).is_invariant()
