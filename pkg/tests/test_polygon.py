import itertools

import pytest

from oracles import catalan, chords_cross, diagonals, polygon_triangulations
from reltilt import completions, exchange_graph
from reltilt.polygon import (
    Arc,
    PolygonError,
    RelativeProblem,
    all_arcs,
    crossing_number,
    hom_dim,
    ext_dim,
    is_noncrossing,
    parse_arcs,
    partial_triangulations,
    rotate,
    shift,
    tiling_end_algebra,
    triangulations,
)


def arcs(text, m):
    return parse_arcs(text, m)


def test_crossing_examples():
    a, b = Arc.make(0, 2, 6), Arc.make(1, 3, 6)
    assert crossing_number(a, b) == 1
    assert crossing_number(a, a) == 0
    assert crossing_number(a, Arc.make(2, 4, 6)) == 0


def test_rotation_examples():
    assert rotate(Arc.make(1, 3, 6)) == Arc.make(0, 2, 6)
    for a in all_arcs(6):
        assert rotate(a, 6) == a
        assert rotate(shift(a)) == a


def test_boundary_edges_are_not_arcs():
    with pytest.raises(PolygonError):
        Arc.make(0, 1, 6)
    with pytest.raises(PolygonError):
        Arc.make(0, 5, 6)
    with pytest.raises(PolygonError):
        Arc.parse("0:3", 6)


@pytest.mark.parametrize("m", [5, 6, 7, 8])
def test_crossing_matches_plane_geometry(m):
    assert sorted(a.ends for a in all_arcs(m)) == diagonals(m)
    for a, b in itertools.product(all_arcs(m), repeat=2):
        assert crossing_number(a, b) == int(chords_cross(m, a.ends, b.ends))


@pytest.mark.parametrize("m", [5, 6, 7])
def test_triangulations_match_recursive_count(m):
    ours = {frozenset(a.ends for a in t) for t in triangulations(m)}
    assert ours == set(polygon_triangulations(m))
    assert len(ours) == catalan(m - 2)


def test_hom_ext_dimensions_are_serre_dual():
    # In a 2-Calabi-Yau category Ext^1(a, b) and Ext^1(b, a) have equal dimension.
    for a, b in itertools.product(all_arcs(7), repeat=2):
        assert ext_dim(a, b) == ext_dim(b, a)
        assert hom_dim(a, shift(b)) == ext_dim(a, b)
    for a in all_arcs(7):
        assert hom_dim(a, a) == 1


def test_tiling_algebra_examples():
    single = tiling_end_algebra(arcs("0-2", 5))
    assert single.dim == 1 and not single.quiver.arrows
    fan = tiling_end_algebra(arcs("0-2,0-3", 5))
    assert fan.dim == 3 and len(fan.quiver.arrows) == 1
    cyc = tiling_end_algebra(arcs("0-2,2-4,0-4", 6))
    assert len(cyc.quiver.arrows) == 3 and cyc.dim == 6
    assert len(cyc.to_dict()["relations"]) == 3
    with pytest.raises(PolygonError):
        tiling_end_algebra(arcs("0-2,1-3", 6))


@pytest.mark.parametrize("m", [5, 6])
def test_tiling_validation_holds_on_every_partial_triangulation(m):
    for R in partial_triangulations(m):
        tiling_end_algebra(R)


def test_realize_stalks_and_outside_arcs():
    P = RelativeProblem(arcs("0-2,0-3", 5))
    assert P.realize(P.R) == tuple(sorted(P.workbench.stalk_key(k) for k in range(2)))
    assert not P.outside
    Q = RelativeProblem(arcs("0-2", 5))
    assert Q.outside
    with pytest.raises(PolygonError):
        Q.realize(Q.outside[:1])


def test_pentagon_one_arc_completion():
    P = RelativeProblem(arcs("0-2,0-3", 5))
    x = Arc.make(2, 4, 5)
    X = P.realize([x])
    assert X[0][0] == "mod"
    res = completions(P.workbench, X)
    assert res.ok
    for side in (res.m_x, res.n_x):
        got = P.arcs(side)
        assert x in got and len(got) == 2 and is_noncrossing(got)
    assert P.arcs(res.m_x) != P.arcs(res.n_x)


def test_empty_completion_over_partial_hexagon():
    R = arcs("0-2,3-5", 6)
    P = RelativeProblem(R)
    res = completions(P.workbench, ())
    assert set(P.arcs(res.n_x)) == set(R)
    assert set(P.arcs(res.m_x)) == {shift(r) for r in R}


def test_exchange_graph_over_pentagon_fan():
    P = RelativeProblem(arcs("0-2,0-3", 5))
    g = exchange_graph(P.workbench)
    got = {frozenset(a.ends for a in P.arcs(U)) for U in g.vertices}
    assert got == set(polygon_triangulations(5))
