from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weylkit.linalg import (
    Echelon,
    NotInLattice,
    hnf_columns,
    hnf_pivots,
    nullspace_fp,
    rank_fp,
    rank_q,
    rref_fp,
    solve_hnf,
    solve_integral,
)


def naive_rank(rows, p=None):
    """Textbook Gaussian elimination over Q (p=None) or F_p, on Fractions / ints."""
    a = [[Fraction(x) if p is None else x % p for x in r] for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][c] != 0:
                if p is None:
                    f = a[i][c] / a[rank][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
                else:
                    f = a[i][c] * pow(a[rank][c], -1, p) % p
                    a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


matrices = st.integers(1, 8).flatmap(
    lambda r: st.integers(1, 8).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def test_rref_identity_mod_2():
    r, piv, rank = rref_fp(np.identity(2, dtype=np.int64), 2)
    assert (r == np.identity(2)).all() and piv == [0, 1] and rank == 2


def test_rref_zero():
    r, piv, rank = rref_fp(np.zeros((3, 3), dtype=np.int64), 2)
    assert not r.any() and piv == [] and rank == 0


def test_rref_all_ones_mod_2():
    r, piv, rank = rref_fp([[1, 1], [1, 1]], 2)
    assert r.tolist() == [[1, 1], [0, 0]] and rank == 1


def test_nullspace_examples():
    assert len(nullspace_fp(np.identity(3, dtype=np.int64), 5)) == 0
    assert len(nullspace_fp(np.zeros((1, 3), dtype=np.int64), 2)) == 3
    assert nullspace_fp([[1, 1]], 2).tolist() == [[1, 1]]


def test_hnf_examples():
    h, t = hnf_columns([[1, 0], [0, 1]])
    assert h == [[1, 0], [0, 1]]
    h, t = hnf_columns([[2], [4]])
    assert h == [[2], [4]]
    # determinant 2: the columns span an index-2 sublattice, not all of Z^2
    h, t = hnf_columns([[2, 1], [0, 1]])
    assert h == [[1, 0], [1, 2]]
    assert h[0][0] * h[1][1] == abs(2 * 1 - 1 * 0)
    h, t = hnf_columns([[2, 1], [1, 1]])
    assert h == [[1, 0], [0, 1]]


def test_solve_integral_examples():
    assert solve_integral([[1, 0], [0, 1]], [3, 5]) == [3, 5]
    assert solve_integral([[2]], [4]) == [2]
    with pytest.raises(NotInLattice):
        solve_integral([[2]], [3])


def test_big_integers_do_not_overflow():
    big = 10**30
    assert rank_fp([[big + 1, big], [big, big - 1]], 3) == naive_rank([[big + 1, big], [big, big - 1]], 3)
    assert solve_integral([[big]], [3 * big]) == [3]


@settings(max_examples=150, deadline=None)
@given(matrices, st.sampled_from([2, 3, 5, 7]))
def test_rank_plus_nullity(m, p):
    a = np.array(m, dtype=np.int64)
    ns = nullspace_fp(a, p)
    assert rank_fp(a, p) + len(ns) == a.shape[1]
    assert not np.mod(a @ ns.T, p).any()
    assert rank_fp(a, p) == naive_rank(m, p)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_q_matches_oracle(m):
    assert rank_q(m) == naive_rank(m)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_hnf_preserves_column_lattice(m):
    h, t = hnf_columns(m)
    rows, cols = len(m), len(m[0])
    r = len(h[0]) if h and h[0] else 0
    assert r == naive_rank(m)
    # h = m t
    for i in range(rows):
        for k in range(r):
            assert h[i][k] == sum(m[i][j] * t[j][k] for j in range(cols))
    piv = hnf_pivots(h)
    assert piv == sorted(set(piv))
    for k, row in enumerate(piv):
        assert h[row][k] > 0
        assert all(h[i][k] == 0 for i in range(row))
        assert all(0 <= h[row][j] < h[row][k] for j in range(k))
    # every original column is an integral combination of the HNF columns
    for j in range(cols):
        col = [m[i][j] for i in range(rows)]
        x = solve_hnf(h, piv, col)
        assert [sum(h[i][k] * x[k] for k in range(r)) for i in range(rows)] == col


@settings(max_examples=100, deadline=None)
@given(matrices, st.sampled_from([2, 3]))
def test_echelon_tracks_span(m, p):
    e = Echelon(len(m[0]), p)
    for row in m:
        e.add(np.array(row))
    assert len(e) == naive_rank(m, p)
    for row in m:
        assert e.contains(np.array(row))
