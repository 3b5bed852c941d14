import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qweyl.coeffs import (
    H,
    ONE,
    Q,
    ZERO,
    PolyQH,
    elem_sym,
    falling,
    gauss_binomial,
    multinomial,
    q_falling,
    q_integer,
)


@pytest.mark.parametrize(
    "n, expected",
    [(0, ZERO), (1, ONE), (3, 1 + Q + Q * Q)],
)
def test_q_integer(n, expected):
    assert q_integer(n) == expected


def test_q_integer_rejects_negative():
    with pytest.raises(ValueError):
        q_integer(-1)


@pytest.mark.parametrize(
    "n, k, expected",
    [(5, 0, ONE), (2, 1, 1 + Q), (2, 3, ZERO)],
)
def test_q_falling(n, k, expected):
    assert q_falling(n, k) == expected


@pytest.mark.parametrize("a, n, expected", [(4, 0, 1), (4, 2, 12), (2, 3, 0)])
def test_falling(a, n, expected):
    assert falling(a, n) == expected


@pytest.mark.parametrize("b, k, expected", [(3, (), 1), (2, (1, 1), 2), (1, (2,), 0)])
def test_multinomial(b, k, expected):
    assert multinomial(b, k) == expected


@pytest.mark.parametrize("s, n, b, expected", [(0, 3, 7, 1), (1, 2, 3, 5), (1, 1, 0, 0)])
def test_elem_sym(s, n, b, expected):
    assert elem_sym(s, n, b) == expected


@pytest.mark.parametrize("a, k, expected", [(4, 0, ONE), (2, 1, 1 + Q), (1, 2, ZERO)])
def test_gauss_binomial(a, k, expected):
    assert gauss_binomial(a, k) == expected


def test_q_falling_at_one_is_falling():
    for n in range(13):
        for k in range(n + 1):
            assert q_falling(n, k).subs(q=1) == falling(n, k)


def test_single_component_multinomial_is_binomial():
    for b in range(13):
        for k in range(13):
            assert multinomial(b, (k,)) == math.comb(b, k)


def _values(n, b):
    # elem_sym evaluates e_s at the points b, b-1, ..., b-n+1
    return [b - i for i in range(n)]


def _e(s, vals):
    return sum(math.prod(c) for c in itertools.combinations(vals, s))


def test_elem_sym_matches_definition_and_newton():
    for n in range(1, 9):
        for b in range(-8, 9):
            vals = _values(n, b)
            for s in range(n + 1):
                assert elem_sym(s, n, b) == _e(s, vals)
                if n > 1 and 0 < s < n:
                    rest = elem_sym(s, n - 1, b)
                    assert elem_sym(s, n, b) == rest + vals[-1] * elem_sym(s - 1, n - 1, b)


def test_str_is_canonical():
    assert str(1 + Q) == "1 + q"
    assert str(Q * Q - 2 * H) == "-2*h + q^2"
    assert str(PolyQH.const(Fraction(1, 2)) * Q) == "1/2*q"
    assert str(ZERO) == "0"


def test_subs():
    p = 3 * Q * H + Q - 1
    assert p.subs(q=1) == 3 * H
    assert p.subs(h=0) == Q - 1


coeff = st.integers(-5, 5) | st.fractions(max_denominator=4).filter(lambda f: abs(f) < 5)
polys = st.dictionaries(
    st.tuples(st.integers(0, 6), st.integers(0, 6)), coeff, max_size=5
).map(PolyQH)


@settings(max_examples=100, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a
