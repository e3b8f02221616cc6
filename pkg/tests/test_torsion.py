import pytest

from conftest import SHAPES, workbench
from oracles import LinearA, interval_table
from reltilt.torsion import (
    TauPair,
    cotorsion_from_sttilt,
    e_perp,
    enumerate_support_tau_tilting,
    enumerate_torsion_classes,
    fac_closure,
    fac_set,
    is_functorially_finite,
    is_tau_rigid_pair,
    left_bongartz,
    pair_from_torsion_class,
    partial_order_ge,
    perp_tau,
    support_tau_tilting_test,
)


def atlas_of(name):
    return workbench(name).atlas


def idx(atlas, *dims):
    """Atlas indices of the modules with the given dimension vectors."""
    by = {M.dims: i for i, M in enumerate(atlas.modules)}
    return frozenset(by[d] for d in dims)


def to_intervals(name, indices):
    atlas = atlas_of(name)
    table = interval_table(LinearA(*SHAPES[name]))
    return frozenset(table[atlas.modules[i].dims] for i in indices)


P1, P2, S1 = (1, 1), (0, 1), (1, 0)


def test_fac_closure_examples():
    atlas = atlas_of("A2")
    T, closed = fac_closure(atlas, idx(atlas, P1, P2))
    assert T == frozenset(range(3)) and closed
    assert fac_set(atlas, idx(atlas, S1)) == idx(atlas, S1)
    assert fac_set(atlas, idx(atlas, P1)) == idx(atlas, P1, S1)


def test_perp_examples():
    atlas = atlas_of("A2")
    everything = frozenset(range(3))
    assert perp_tau(atlas, ()) == everything
    assert perp_tau(atlas, idx(atlas, S1)) == idx(atlas, P1, S1)
    assert perp_tau(atlas, idx(atlas, P1)) == everything
    assert e_perp(atlas, ()) == everything
    assert e_perp(atlas, (2,)) == idx(atlas, S1)
    assert e_perp(atlas, (1, 2)) == frozenset()


def test_support_tau_tilting_examples():
    atlas = atlas_of("A2")
    assert support_tau_tilting_test(atlas, TauPair.make(atlas, idx(atlas, P1, P2)))
    assert support_tau_tilting_test(atlas, TauPair.make(atlas, idx(atlas, S1), (2,)))
    assert not support_tau_tilting_test(atlas, TauPair.make(atlas, idx(atlas, S1)))


def test_partial_order_examples():
    atlas = atlas_of("A2")
    top = TauPair.make(atlas, idx(atlas, P1, S1))
    low = TauPair.make(atlas, idx(atlas, S1), (2,))
    assert partial_order_ge(atlas, top, top)
    assert partial_order_ge(atlas, top, low)
    assert not partial_order_ge(atlas, low, top)


def test_cotorsion_examples_over_a2():
    atlas = atlas_of("A2")
    zero = cotorsion_from_sttilt(atlas, TauPair.make(atlas, (), (1, 2)))
    assert zero.v_class == frozenset() and zero.u_class == frozenset(range(3))
    for pair in enumerate_support_tau_tilting(atlas):
        c = cotorsion_from_sttilt(atlas, pair)
        assert c.round_trip
        assert c.tau_cotorsion_torsion and c.left_weak_cotorsion_torsion


@pytest.mark.parametrize("name", list(SHAPES))
def test_torsion_classes_match_oracle(name):
    atlas = atlas_of(name)
    model = LinearA(*SHAPES[name])
    ours = {to_intervals(name, T) for T in enumerate_torsion_classes(atlas)}
    assert ours == set(model.torsion_classes())


@pytest.mark.parametrize("name", list(SHAPES))
def test_support_tau_tilting_pairs_match_oracle(name):
    atlas = atlas_of(name)
    model = LinearA(*SHAPES[name])
    ours = {(to_intervals(name, p.modules), frozenset(p.e_vertices)) for p in enumerate_support_tau_tilting(atlas)}
    assert ours == model.support_tau_tilting_pairs()


@pytest.mark.parametrize("name", ["A2", "A3", "A4r3"])
def test_fac_matches_oracle_and_is_torsion(name):
    atlas = atlas_of(name)
    model = LinearA(*SHAPES[name])
    for pair in enumerate_support_tau_tilting(atlas):
        T, closed = fac_closure(atlas, pair.modules)
        assert closed
        assert to_intervals(name, T) == model.fac(to_intervals(name, pair.modules))
        assert is_functorially_finite(atlas, T)
        assert pair_from_torsion_class(atlas, T) == pair


@pytest.mark.parametrize("name", ["A2", "A3"])
def test_tau_rigid_pairs_lie_under_perp(name):
    atlas = atlas_of(name)
    for pair in enumerate_support_tau_tilting(atlas):
        for k in range(len(pair.modules) + 1):
            sub = TauPair.make(atlas, pair.modules[:k], pair.e_vertices)
            assert is_tau_rigid_pair(atlas, sub)
            assert fac_set(atlas, sub.modules) <= perp_tau(atlas, sub.modules) & e_perp(atlas, sub.e_vertices)


def test_left_bongartz_examples():
    atlas = atlas_of("A2")
    X = TauPair.make(atlas, idx(atlas, S1))
    L = TauPair.make(atlas, idx(atlas, S1), (2,))
    res = left_bongartz(atlas, X, L)
    assert res.torsion_class == idx(atlas, S1)
    assert res.pair == L
    top = TauPair.make(atlas, idx(atlas, P1, S1))
    res = left_bongartz(atlas, TauPair.make(atlas, ()), top)
    assert res.pair == top and res.torsion_class == fac_set(atlas, top.modules)
    res = left_bongartz(atlas, X, top)
    assert res.pair == top
    with pytest.raises(ValueError):
        left_bongartz(atlas, TauPair.make(atlas, (), (2,)), TauPair.make(atlas, idx(atlas, P1, P2)))
