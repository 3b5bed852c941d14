import itertools

import pytest

from qweyl.algebra import AlgebraError, AlgebraId
from qweyl.closed_forms import (
    CrossingMap,
    base_expand,
    chi_k,
    closed_form_product,
    coords_to_json,
    crossing_maps,
    crossing_number,
    h_normal_coords,
    h_reconstruct,
    q_normal_coords,
    qo_normal_coords,
    qo_recursion_step,
    sl2_normal_coords,
    sl2_reconstruct,
)
from qweyl.checks import Bounds, exponent_grid, oracle_of
from qweyl.coeffs import H, ONE, Q, ZERO, gauss_binomial

from conftest import poly

YX = ((0, 1), (1, 0))


def test_crossing_number_examples():
    # word y x: the y sits at position 0, the x at position 1
    assert crossing_number(CrossingMap(YX, (1,))) == 0
    assert crossing_number(CrossingMap(YX, (None,))) == 1
    assert crossing_number(CrossingMap(((0, 2),), (None, None))) == 0


def test_crossing_map_validation():
    with pytest.raises(ValueError):
        CrossingMap(((1, 1),), (0,))  # x of the same factor
    with pytest.raises(ValueError):
        CrossingMap(((0, 2), (1, 0)), (2, 2))  # not injective


def test_crossing_maps_counts():
    assert len(list(crossing_maps(YX))) == 2
    assert [p.k for p in crossing_maps(YX, 1)] == [1]
    # two y's, two later x's: 1 + 4 + 2 maps
    assert len(list(crossing_maps(((0, 2), (2, 0))))) == 7


@pytest.mark.parametrize(
    "A, expected",
    [
        (((1, 0),), {0: ONE}),
        (YX, {0: Q, 1: ONE}),
        (((0, 2), (1, 0)), {0: Q * Q, 1: 1 + Q}),
    ],
)
def test_qo_normal_coords(A, expected):
    assert qo_normal_coords(A) == expected


@pytest.mark.parametrize("k, expected", [(1, ONE), (0, Q), (2, ZERO)])
def test_qo_recursion_step(k, expected):
    assert qo_recursion_step(YX, k) == expected


@pytest.mark.parametrize("a, k, expected", [(3, 0, ONE), (2, 1, 1 + Q), (2, 2, ONE)])
def test_chi_k(a, k, expected):
    assert chi_k(a, k) == expected


def test_chi_k_is_gaussian_binomial():
    for a in range(9):
        for k in range(a + 1):
            assert chi_k(a, k) == gauss_binomial(a, k)


@pytest.mark.parametrize(
    "algebra, expected",
    [
        ("q-weyl", {(2, 0, 1): ONE, (1, 1, 0): 1 + Q}),
        ("h-weyl", {(2, 0, 1): ONE, (1, 0, 1): 2 * H, (0, 0, 1): H * H}),
    ],
)
def test_base_expand_z_x_squared(algebra, expected):
    assert base_expand(algebra, "z", 1, "x", 2) == poly(algebra, expected)


def test_base_expand_sl2():
    assert base_expand("sl2", "z", 1, "x", 1) == poly("sl2", {(1, 0, 1): 1, (0, 1, 0): 1})


@pytest.mark.parametrize("a, b", [(1, 1), (2, 3), (3, 2), (2, 2)])
def test_sl2_signs_alternate(a, b):
    # z^a y^b = sum_k c_k y^(b-k) z^a and y^a x^b = sum_k c_k x^b y^(a-k), c_k = (-2)^k * positive
    for left, right, lost in [("z", "y", b), ("y", "x", a)]:
        p = base_expand("sl2", left, a, right, b)
        for m, c in p.items():
            k = lost - m.exps[1]
            value = c.constant()
            assert value % 2**k == 0
            assert (value > 0) == (k % 2 == 0)


def test_q_weyl_coords():
    assert q_normal_coords(((1, 2, 0),)) == {(): ONE}
    assert q_normal_coords(((0, 0, 1), (1, 0, 0))) == {(0,): ONE, (1,): ONE}
    assert q_normal_coords(((0, 0, 1), (2, 0, 0))) == {(0,): ONE, (1,): 1 + Q}


def test_h_weyl_coords():
    assert h_normal_coords(((2, 0, 1),)) == {((), ()): 1}
    A = ((0, 1, 0), (1, 0, 0))
    assert h_reconstruct(A, h_normal_coords(A)) == poly("h-weyl", {(1, 1, 0): 1, (0, 0, 1): 1})
    A = ((0, 0, 1), (1, 0, 0))
    assert h_reconstruct(A, h_normal_coords(A)) == poly("h-weyl", {(1, 0, 1): 1, (0, 0, 1): H})


def test_sl2_coords():
    assert sl2_normal_coords(((1, 1, 1),)) == {((), (), (), ()): 1}
    A = ((0, 0, 1), (1, 0, 0))
    assert sl2_reconstruct(A, sl2_normal_coords(A)) == poly("sl2", {(1, 0, 1): 1, (0, 1, 0): 1})
    A = ((0, 1, 0), (1, 0, 0))
    assert sl2_reconstruct(A, sl2_normal_coords(A)) == poly("sl2", {(1, 1, 0): 1, (1, 0, 0): -2})


def test_coords_json():
    assert coords_to_json("q-weyl", q_normal_coords(((0, 0, 1), (2, 0, 0)))) == {"0": "1", "1": "1 + q"}
    assert coords_to_json("q-oscillator", qo_normal_coords(YX)) == {"0": "q", "1": "1"}


def test_bad_sequences():
    with pytest.raises(AlgebraError):
        qo_normal_coords(((1, 0, 0),))
    with pytest.raises(AlgebraError):
        q_normal_coords(())


SMALL = Bounds(max_exp=1, max_factors=3)


@pytest.mark.parametrize("algebra", [AlgebraId.Q_OSCILLATOR, AlgebraId.Q_WEYL, AlgebraId.H_WEYL, AlgebraId.SL2])
def test_oracle_equivalence_small_grid(algebra):
    # the full grid runs in the acceptance module
    for A in exponent_grid(algebra, SMALL):
        assert closed_form_product(algebra, A) == oracle_of(algebra, A), A


def test_recursion_on_small_grid():
    for A in exponent_grid(AlgebraId.Q_OSCILLATOR, Bounds(max_exp=2, max_factors=2)):
        coords = qo_normal_coords(A)
        for k in range(5):
            assert qo_recursion_step(A, k) == coords.get(k, ZERO)


def test_classical_limit_of_qo_coords():
    for A in exponent_grid(AlgebraId.Q_OSCILLATOR, SMALL):
        for value in qo_normal_coords(A).values():
            v = value.subs(q=1)
            assert v.is_constant() and v.constant() >= 0
