import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from cmtool.errors import InputError, ResourceError
from cmtool.exact import det, mat_mul, transpose
from cmtool.lattice import (
    enumerate_norm_at_most, gram_schmidt, is_lll_reduced, lll_reduce, nearest_plane, norm,
    shortest_norm,
)

from oracles import box_size, box_vectors, gram_schmidt_norms, is_size_reduced_and_lovasz


def random_gram(n):
    """Gram matrices of random full-rank integer bases."""
    row = st.lists(st.integers(-6, 6), min_size=n, max_size=n)
    return st.lists(row, min_size=n, max_size=n).filter(lambda B: det(B) != 0).map(
        lambda B: mat_mul(B, transpose(B)))


def test_gram_schmidt_examples():
    mu, norms = gram_schmidt([[2, 0], [0, 2]])
    assert mu[1][0] == 0 and norms == [2, 2]
    mu, norms = gram_schmidt([[4, 1], [1, 1]])
    assert mu[1][0] == Fraction(1, 4)
    assert norms == [4, Fraction(3, 4)]
    assert gram_schmidt([[1, 0], [0, 3]])[1] == [1, 3]


def test_gram_schmidt_rejects_indefinite():
    with pytest.raises(InputError):
        gram_schmidt([[1, 2], [2, 1]])


def test_lll_examples():
    G, T = lll_reduce([[4, 1], [1, 1]])
    assert G == [[1, 0], [0, 3]]
    assert T == [[0, 1], [1, -1]]
    assert lll_reduce([[2, 0], [0, 2]]) == ([[2, 0], [0, 2]], [[1, 0], [0, 1]])
    G, T = lll_reduce([[6, 10], [10, 20]])
    assert G == [[4, -2], [-2, 6]]
    assert det(G) == 20


def test_lll_rejects_non_definite():
    with pytest.raises(InputError):
        lll_reduce([[1, 2], [2, 1]])
    with pytest.raises(InputError):
        lll_reduce([[1, 2], [3, 1]])


@given(st.integers(1, 4).flatmap(random_gram))
def test_lll_properties(G):
    R, T = lll_reduce(G)
    assert abs(det(T)) == 1
    assert mat_mul(mat_mul(T, G), transpose(T)) == R
    assert det(R) == det(G)
    assert is_lll_reduced(R)
    assert is_size_reduced_and_lovasz(R)
    assert gram_schmidt(R)[1] == gram_schmidt_norms(R)


def test_nearest_plane_examples():
    G = [[64, 0], [0, 64]]
    assert nearest_plane(G, [0, 0]) == [0, 0]
    assert nearest_plane(G, [3, -2]) == [3, -2]
    assert nearest_plane(G, [Fraction(3, 8), 0]) == [0, 0]


@given(st.integers(1, 3).flatmap(random_gram),
       st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=3, max_size=3))
def test_nearest_plane_guarantee(G, t):
    R, _ = lll_reduce(G)
    n = len(R)
    t = t[:n]
    p = nearest_plane(R, t)
    resid = [a - b for a, b in zip(t, p)]
    got = norm(R, resid)
    # exact closest vector by searching a window around the rounded point
    best = None
    for d in itertools.product(range(-3, 4), repeat=n):
        q = [a + b for a, b in zip(p, d)]
        v = norm(R, [a - b for a, b in zip(t, q)])
        best = v if best is None or v < best else best
    assert got <= (2 ** n - 1) * best


def test_enumerate_examples():
    assert sorted(enumerate_norm_at_most([[2, 0], [0, 2]], 2)) == sorted(
        [[1, 0], [-1, 0], [0, 1], [0, -1]])
    assert enumerate_norm_at_most([[3, 1], [1, 5]], 0) == []
    assert sorted(enumerate_norm_at_most([[4, -2], [-2, 6]], 4)) == [[-1, 0], [1, 0]]


@given(st.integers(1, 4).flatmap(random_gram), st.integers(0, 60))
def test_enumerate_matches_box_search(G, bound):
    assume(box_size(G, bound) <= 20000)
    got = sorted(enumerate_norm_at_most(G, bound))
    assert got == sorted(box_vectors(G, bound))


def test_enumerate_block_diagonal():
    G = [[2, 0, 0], [0, 2, 1], [0, 1, 2]]
    assert sorted(enumerate_norm_at_most(G, 4)) == sorted(box_vectors(G, 4))


def test_enumerate_budget():
    G = [[1 if i == j else 0 for j in range(6)] for i in range(6)]
    with pytest.raises(ResourceError, match="budget of 10"):
        enumerate_norm_at_most(G, 6, budget=10)


def test_shortest_norm():
    assert shortest_norm([[4, -2], [-2, 6]]) == 4
    assert shortest_norm([[6, 10], [10, 20]]) == 4
