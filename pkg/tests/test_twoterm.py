import pytest

from conftest import SHAPES, workbench
from oracles import LinearA, interval_table
from reltilt import linear_a
from reltilt.modules import Representation, is_isomorphic, projective_module
from reltilt.twoterm import (
    TwoTermComplex,
    cocone,
    cone,
    decompose_two_term,
    direct_sum_tt,
    h_functor,
    hom_k,
    hom_k_shift1,
    identity_map,
    is_two_term_rigid,
    left_approx_tt,
    minimal_form,
    right_approx_tt,
    same_indecomposable,
    zero_map,
)


@pytest.fixture(scope="module")
def a2():
    alg = linear_a(2)
    P1 = TwoTermComplex.stalk(alg, (1,))
    P2 = TwoTermComplex.stalk(alg, (2,))
    U = TwoTermComplex.from_module(Representation(alg, (1, 0)))
    return alg, P1, P2, U, TwoTermComplex.shifted_stalk(alg, (1,)), TwoTermComplex.shifted_stalk(alg, (2,))


def test_presentation_of_simple_top(a2):
    _, _, _, U, _, _ = a2
    assert U.p1 == (2,) and U.p0 == (1,)
    M, e = h_functor(U)
    assert M.dims == (1, 0) and e == ()


def test_minimal_form(a2):
    alg, P1, _, U, _, _ = a2
    idP = TwoTermComplex(alg, (1,), (1,), alg.element({1: 1}).reshape(1, 1, -1))
    assert minimal_form(idP).is_zero()
    again = minimal_form(U)
    assert (again.p1, again.p0) == (U.p1, U.p0) and (again.d == U.d).all()
    mixed = direct_sum_tt([idP, U])
    assert same_indecomposable(minimal_form(mixed), U)


def test_hom_k_examples(a2):
    _, P1, _, U, _, _ = a2
    assert hom_k(U, U).dim == 1
    assert hom_k_shift1(U, U).dim == 0
    assert hom_k(P1, U).dim == 1


def test_cone_examples(a2):
    _, P1, P2, U, _, P2s = a2
    assert cone(identity_map(U)).is_zero()
    f = hom_k(P2, P1).reps[0]
    assert same_indecomposable(cone(f), U)
    g = hom_k(P1, U).reps[0]
    assert same_indecomposable(cone(g), P2s)


def test_cocone_examples(a2):
    alg, P1, P2, U, P1s, P2s = a2
    split = cocone(zero_map(U, P2s))
    parts = decompose_two_term(split)
    assert len(parts) == 2
    assert any(same_indecomposable(c, U) for c in parts)
    assert any(same_indecomposable(c, P2) for c in parts)
    h = hom_k(U, P2s).reps[0]
    assert same_indecomposable(cocone(h), P1)
    assert hom_k(U, P1s).dim == 0


def test_decompose_and_h(a2):
    alg, P1, _, U, _, P2s = a2
    parts = decompose_two_term(P1)
    assert len(parts) == 1 and same_indecomposable(parts[0], P1)
    assert len(decompose_two_term(direct_sum_tt([P1, P2s]))) == 2
    M, e = h_functor(P1)
    assert is_isomorphic(M, projective_module(alg, (1,))) and e == ()
    M, e = h_functor(P2s)
    assert M.is_zero() and e == (2,)


def test_rigidity_examples(a2):
    _, P1, P2, U, _, P2s = a2
    assert is_two_term_rigid([P1, P2]).rigid
    assert is_two_term_rigid([U, P2s]).rigid
    bad = is_two_term_rigid([P2, P2s])
    assert not bad.rigid
    assert bad.dims[(1, 0)] == 1 and bad.dims[(0, 1)] == 0


def test_approximation_examples(a2):
    _, P1, _, U, P1s, _ = a2
    assert left_approx_tt(U, [U]).summands == (0,)
    left = left_approx_tt(P1, [U])
    assert left.summands == (0,) and not hom_k(P1, U).is_null(left.map)
    assert right_approx_tt(P1s, [U]).summands == ()


@pytest.mark.parametrize("name", ["A3", "A4r3"])
def test_shift_hom_equals_tau_hom_oracle(name):
    wb = workbench(name)
    model = LinearA(*SHAPES[name])
    table = interval_table(model)
    ivs = [table[M.dims] for M in wb.atlas.modules]
    for i, I in enumerate(ivs):
        for j, J in enumerate(ivs):
            # Hom_K(pres M_i, pres M_j [1]) = dim Hom(M_j, τ M_i)
            assert hom_k_shift1(wb.obj(("mod", i)), wb.obj(("mod", j))).dim == model.tau_hom(I, J)


@pytest.mark.parametrize("name", ["A2", "A3"])
def test_shift_hom_matches_ext_on_hereditary(name):
    wb = workbench(name)
    atlas = wb.atlas
    for i in range(len(atlas)):
        for j in range(len(atlas)):
            # hereditary: Hom_K(pres M, pres N [1]) = Hom(N, τM) = D Ext^1(M, N)
            assert hom_k_shift1(wb.obj(("mod", i)), wb.obj(("mod", j))).dim == atlas.ext_dim(i, j)
