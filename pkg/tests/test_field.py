import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_kernel, brute_rank, gaussian_binomial, span_size
from reltilt import field
from reltilt.modules import count_subspaces

SMALL_PRIMES = [2, 3, 5, 7]


def matrices(p, max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    ).map(lambda rows: np.array(rows, dtype=np.int64))


def test_rref_small_example_over_f5():
    res = field.rref(np.array([[1, 2], [2, 4]]), p=5)
    assert res.rank == 1
    assert res.pivots == (0,)
    assert res.matrix.tolist() == [[1, 2], [0, 0]]


def test_kernel_over_f3():
    ker = field.nullspace(np.array([[1, 1]]), p=3)
    assert ker.shape == (1, 2)
    assert sorted(map(tuple, ker.tolist())) == [(2, 1)]
    assert sorted(brute_kernel(np.array([[1, 1]]), 3)) == [(0, 0), (1, 2), (2, 1)]


def test_planes_of_f2_cubed():
    assert count_subspaces(3, 2) == 1 + 7 + 7 + 1
    assert gaussian_binomial(3, 2, 2) == 7


def test_inverse_scalar_and_prime_guard():
    assert (3 * field.inv_scalar(3, 7)) % 7 == 1
    with pytest.raises(ZeroDivisionError):
        field.inv_scalar(0, 7)
    assert field.is_prime(32003)
    assert not field.is_prime(32001)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_rank_matches_enumeration(p):
    rng = np.random.default_rng(p)
    for _ in range(20):
        a = rng.integers(0, p, size=(3, 4))
        assert field.rank(a, p) == brute_rank(a, p)


@given(st.sampled_from(SMALL_PRIMES).flatmap(lambda p: st.tuples(st.just(p), matrices(p))))
def test_rref_idempotent_and_rank_symmetric(pa):
    p, a = pa
    red = field.rref(a, p)
    again = field.rref(red.matrix, p)
    assert np.array_equal(again.matrix, red.matrix)
    assert field.rank(a, p) == field.rank(a.T, p) == red.rank
    assert span_size(a, p) == p ** red.rank


@given(st.sampled_from(SMALL_PRIMES).flatmap(lambda p: st.tuples(st.just(p), matrices(p), matrices(p))))
def test_solve_is_exact(pab):
    p, a, b = pab
    b = b[:, :1]
    if b.shape[0] != a.shape[0]:
        b = np.resize(b, (a.shape[0], 1))
    x, ker = field.solve(a, b, p)
    consistent = field.rank(a, p) == field.rank(np.hstack([a, b]), p)
    assert (x is not None) == consistent
    if x is not None:
        assert np.array_equal((a @ x) % p, b % p)
    assert not ((a @ ker.T) % p).any()
    assert ker.shape[0] == a.shape[1] - field.rank(a, p)


@given(st.sampled_from([2, 3]).flatmap(lambda p: st.tuples(st.just(p), matrices(p, 3, 3), matrices(p, 3, 3))))
def test_sum_intersection_dimension_formula(puv):
    p, u, v = puv
    n = min(u.shape[1], v.shape[1])
    u, v = u[:, :n], v[:, :n]
    s, i = field.subspace_sum_intersect(u, v, p)
    assert field.rank(s, p) + field.rank(i, p) == field.rank(u, p) + field.rank(v, p)
    assert field.in_row_space(s, u, p) and field.in_row_space(s, v, p)
    if i.shape[0]:
        assert field.in_row_space(u, i, p) and field.in_row_space(v, i, p)


@given(st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_random_invertible_has_inverse(n, seed):
    rng = np.random.default_rng(seed)
    a = field.random_invertible(rng, n, p=101)
    assert np.array_equal(field.matmul(a, field.inverse(a, 101), p=101), np.eye(n, dtype=np.int64))
