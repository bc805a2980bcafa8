import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conductors import linalg as la
from conductors.exactnum import Cyclotomic


def leibniz_det(M):
    n = len(M)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = Fraction(sign)
        for i in range(n):
            prod *= M[i][perm[i]]
        total += prod
    return total


def minors_rank(M):
    """Largest k with a nonzero k x k minor; an oracle independent of elimination."""
    rows, cols = len(M), len(M[0])
    for k in range(min(rows, cols), 0, -1):
        for r in itertools.combinations(range(rows), k):
            for c in itertools.combinations(range(cols), k):
                if leibniz_det([[M[i][j] for j in c] for i in r]) != 0:
                    return k
    return 0


MATS = st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.lists(st.lists(st.integers(min_value=-2, max_value=2), min_size=n, max_size=n),
                       min_size=1, max_size=4))


@given(MATS)
def test_rank_matches_minors(rows):
    M = la.to_matrix(rows, 1)
    assert la.rank([list(r) for r in M]) == minors_rank([[Fraction(x) for x in r] for r in rows])


@given(MATS)
def test_nullspace_is_annihilated_and_has_complementary_dimension(rows):
    ncols = len(rows[0])
    M = la.to_matrix(rows, 1)
    basis = la.nullspace([list(r) for r in M], ncols, 1)
    assert len(basis) == ncols - la.rank([list(r) for r in M])
    for v in basis:
        for r in M:
            assert sum((a * b for a, b in zip(r, v)), Cyclotomic.zero(1)) == 0


@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=1, max_value=4))
def test_inverse(seed, n):
    rng = random.Random(seed)
    z = Cyclotomic.zeta(3)
    M = la.to_matrix([[rng.randint(-2, 2) + rng.randint(-1, 1) * z for _ in range(n)]
                      for _ in range(n)], 3)
    if la.rank([list(r) for r in M]) < n:
        with pytest.raises(ZeroDivisionError):
            la.inverse(M)
        return
    assert la.matmul(M, la.inverse(M)) == la.identity(n, 3)


def test_subspace_intersection():
    e = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    A = la.Subspace.span([e[0], e[1]], 3, 1)
    B = la.Subspace.span([e[1], e[2]], 3, 1)
    C = A.intersect(B)
    assert C.dim == 1 and C.contains(e[1]) and not C.contains(e[0])
    assert la.Subspace.span([[2, 2, 0], [1, -1, 0]], 3, 1) == A


def test_exp_of_nilpotent():
    N = la.to_matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]], 1)
    E = la.exp_nilpotent(N, 2)
    assert E == la.to_matrix([[1, 2, 2], [0, 1, 2], [0, 0, 1]], 1)
    assert la.nilpotent_index(N) == 3
    with pytest.raises(ValueError):
        la.exp_nilpotent(la.identity(2), 1)


@given(st.fractions(max_denominator=5), st.fractions(max_denominator=5))
def test_exp_is_additive(s, t):
    N = la.to_matrix([[0, 1, 3], [0, 0, -2], [0, 0, 0]], 1)
    assert la.matmul(la.exp_nilpotent(N, s), la.exp_nilpotent(N, t)) == la.exp_nilpotent(N, s + t)


def test_matpow_negative():
    M = la.to_matrix([[2, 1], [1, 1]], 1)
    assert la.matmul(la.matpow(M, -3), la.matpow(M, 3)) == la.identity(2)
