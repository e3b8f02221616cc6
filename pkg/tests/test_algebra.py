import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import count_paths
from reltilt import AlgebraError, NonConfluentError, build_algebra, linear_a
from reltilt.io import algebra_from_dict, dump_algebra, load_algebra


@pytest.mark.parametrize("n,k,expected", [(2, None, 3), (3, None, 6), (4, 3, 9), (5, 2, 9), (4, None, 10)])
def test_dimension_matches_path_count(n, k, expected):
    alg = linear_a(n, k)
    arrows = [(f"x{i}", i, i + 1) for i in range(1, n)]
    zero = [] if k is None else [[f"x{j}" for j in range(i, i + k)] for i in range(1, n - k + 1)]
    assert alg.dim == expected == count_paths(n, arrows, zero)


def test_projective_dimension_vectors():
    assert linear_a(2).projective_dim_vector(1) == (1, 1)
    assert linear_a(2).projective_dim_vector(2) == (0, 1)
    assert linear_a(3).projective_dim_vector(1) == (1, 1, 1)
    alg = linear_a(4, 3)
    assert sum(sum(alg.projective_dim_vector(v)) for v in alg.vertices) == alg.dim
    with pytest.raises(AlgebraError):
        alg.indecomposable_projective(7)


def test_truncation_kills_long_paths():
    alg = linear_a(4, 3)
    x1x2 = alg.element({("x1", "x2"): 1})
    x3 = alg.element({("x3",): 1})
    assert alg.multiply(x1x2, x3).tolist() == alg.zero().tolist()
    x2 = alg.element({("x2",): 1})
    x1 = alg.element({("x1",): 1})
    assert np.array_equal(alg.multiply(x1, x2), x1x2)


def test_kronecker_square_zero_commutativity_rejected_as_nonconfluent():
    arrows = [("a", 1, 2), ("b", 1, 2), ("c", 2, 2)]
    rels = [[(1, ["a", "c"]), (-1, ["b", "c"])], [(1, ["c", "c"])], [(1, ["b", "c"]), (1, ["a", "c"])]]
    with pytest.raises(NonConfluentError, match="confluent"):
        build_algebra([1, 2], arrows, rels)


def test_loop_without_relations_is_rejected():
    with pytest.raises(AlgebraError):
        build_algebra([1], [("c", 1, 1)], [])


def test_dimension_must_stay_below_prime():
    with pytest.raises(AlgebraError):
        linear_a(3, prime=5)
    assert linear_a(2, prime=5).dim == 3


def test_commutative_square_dimension():
    arrows = [("a", 1, 2), ("b", 2, 4), ("c", 1, 3), ("d", 3, 4)]
    alg = build_algebra([1, 2, 3, 4], arrows, [[(1, ["a", "b"]), (-1, ["c", "d"])]])
    assert alg.dim == 4 + 4 + 1
    ab = alg.element({("a", "b"): 1})
    cd = alg.element({("c", "d"): 1})
    assert np.array_equal(ab, cd)


def test_opposite_reverses_paths():
    alg = linear_a(3)
    op = alg.opposite()
    assert op.dim == alg.dim
    assert op.projective_dim_vector(3) == (1, 1, 1)


@pytest.mark.parametrize("fmt", ["json", "toml"])
def test_dump_round_trip_is_bit_exact(tmp_path, fmt):
    alg = linear_a(4, 3)
    text = dump_algebra(alg, fmt)
    path = tmp_path / f"a.{fmt}"
    path.write_text(text)
    again = load_algebra(str(path))
    assert dump_algebra(again, fmt) == text
    assert again.to_dict() == alg.to_dict()


def test_algebra_from_dict_reports_missing_fields():
    from reltilt.io import InputError

    with pytest.raises(InputError):
        algebra_from_dict({"arrows": []})


@given(st.integers(0, 2**32 - 1))
def test_multiplication_associative_on_random_elements(seed):
    alg = linear_a(4, 3)
    rng = np.random.default_rng(seed)
    x, y, z = (rng.integers(0, alg.p, size=alg.dim) for _ in range(3))
    lhs = alg.multiply(alg.multiply(x, y), z)
    rhs = alg.multiply(x, alg.multiply(y, z))
    assert np.array_equal(lhs, rhs)


def test_idempotents_are_orthogonal_and_sum_to_one():
    alg = linear_a(3)
    es = [alg.element({v: 1}) for v in alg.vertices]
    one = sum(es) % alg.p
    for e, f in itertools.product(es, es):
        prod = alg.multiply(e, f)
        assert np.array_equal(prod, e if e is f else alg.zero())
    b = alg.basis_element(4)
    assert np.array_equal(alg.multiply(one, b), b)
    assert np.array_equal(alg.multiply(b, one), b)
