import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from apolar.linalg import rank_int_rows, RankPolicy
from apolar.symbolic import ParamMatrix, symbolic_rank


def affine(params, constant, coeffs):
    return ParamMatrix.from_affine(params, constant, coeffs)


def test_proportional_rows_rank_one():
    # [[a, b], [2a, 2b]]
    pm = affine(
        ("a", "b"),
        None,
        [[[1, 0], [2, 0]], [[0, 1], [0, 2]]],
    )
    assert symbolic_rank(pm) == 1


def test_swap_matrix_rank_two():
    # [[a, b], [b, a]]: determinant a^2 - b^2 is not identically zero
    pm = affine(
        ("a", "b"),
        None,
        [[[1, 0], [0, 1]], [[0, 1], [1, 0]]],
    )
    assert symbolic_rank(pm) == 2


def test_constant_matrix():
    pm = affine(("a",), [[1, 2], [2, 4]], [None])
    assert symbolic_rank(pm) == 1


def test_single_homogeneous_parameter():
    pm = affine(("a",), None, [[[1, 2], [2, 4]]])
    assert symbolic_rank(pm) == 1


def test_affine_validation():
    with pytest.raises(ValueError):
        ParamMatrix(("a",), 1, 1, ({(2,): Fraction(1)},))


def test_rational_coefficients():
    pm = affine(("a", "b"), None, [[[Fraction(1, 2)]], [[Fraction(1, 3)]]])
    assert symbolic_rank(pm) == 1


@st.composite
def affine_matrices(draw):
    nr = draw(st.integers(1, 4))
    nc = draw(st.integers(1, 4))
    s = draw(st.integers(1, 3))
    ents = st.integers(min_value=-4, max_value=4)

    def mat():
        return [[draw(ents) for _ in range(nc)] for _ in range(nr)]

    constant = mat() if draw(st.booleans()) else None
    coeffs = [mat() if draw(st.booleans()) else None for _ in range(s)]
    if constant is None and all(c is None for c in coeffs):
        constant = mat()
    params = tuple(f"a{i}" for i in range(s))
    return ParamMatrix.from_affine(params, constant, coeffs)


@given(affine_matrices(), st.integers(0, 2**32 - 1))
def test_symbolic_rank_bounds_every_specialization(pm, seed):
    rk = symbolic_rank(pm)
    rng = random.Random(seed)
    values = [rng.randint(-50, 50) for _ in pm.params]
    rows = pm.evaluate(values)
    assert rank_int_rows(rows, pm.ncols, RankPolicy(mode="exact")) <= rk


def test_schwartz_zippel_equality_rate():
    # generic rank is attained at a uniformly random point with probability
    # at least 1 - deg/|sample set|; with |S| = 10^6 misses are freak events
    pm = affine(
        ("a", "b", "c"),
        None,
        [
            [[1, 0, 2], [0, 1, 0], [1, 1, 0]],
            [[0, 1, 0], [1, 0, 1], [0, 2, 1]],
            [[1, 0, 1], [0, 3, 0], [1, 0, 2]],
        ],
    )
    rk = symbolic_rank(pm)
    rng = random.Random(20240101)
    exact = RankPolicy(mode="exact")
    hits = 0
    trials = 1000
    for _ in range(trials):
        values = [rng.randint(1, 10**6) for _ in pm.params]
        if rank_int_rows(pm.evaluate(values), pm.ncols, exact) == rk:
            hits += 1
    assert hits >= trials - 5


def test_symbolic_rank_matches_exhaustive_maximum_small():
    # 2x2 over GF(3)-sized search: max specialization rank equals symbolic
    pm = affine(("a", "b"), None, [[[1, 1], [0, 1]], [[0, 1], [1, 0]]])
    rk = symbolic_rank(pm)
    best = 0
    exact = RankPolicy(mode="exact")
    for a in range(-3, 4):
        for b in range(-3, 4):
            best = max(best, rank_int_rows(pm.evaluate([a, b]), 2, exact))
    assert best == rk
