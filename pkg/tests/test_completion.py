import itertools

import pytest

from conftest import SHAPES, workbench
from oracles import LinearA, catalan, exchange_edges
from reltilt import (
    bongartz,
    co_bongartz,
    completions,
    exchange_graph,
    is_weak_cluster_tilting,
    mutate,
    r_annihilator,
    verify_mutation_pair,
)
from reltilt.completion import AlreadyCompleteError, NotRigidError, canon
from reltilt.io import parse_subcategory
from reltilt.theorems import weak_cluster_tilting


def keys(wb, *labels):
    return parse_subcategory(wb, list(labels))


def oracle_subcats(name):
    """Support τ-tilting pairs from the interval oracle, as workbench keys."""
    wb = workbench(name)
    model = LinearA(*SHAPES[name])
    index = {M.dims: i for i, M in enumerate(wb.atlas.modules)}
    out = set()
    for Ms, E in model.support_tau_tilting_pairs():
        out.add(canon([("mod", index[model.dims(I)]) for I in Ms] + [wb.shift_key(v) for v in E]))
    return out


def test_r_annihilator_examples():
    wb = workbench("A2")
    assert r_annihilator(wb, keys(wb, "P1", "P2")) == ()
    assert r_annihilator(wb, keys(wb, "M(10)")) == (2,)
    assert r_annihilator(wb, ()) == (1, 2)
    with pytest.raises(NotRigidError):
        r_annihilator(wb, keys(wb, "P2", "P2[1]"))


def test_bongartz_examples_over_a2():
    wb = workbench("A2")
    gamma = keys(wb, "P1", "P2")
    assert co_bongartz(wb, ()).keys == keys(wb, "P1[1]", "P2[1]")
    assert bongartz(wb, ()).keys == gamma
    assert co_bongartz(wb, gamma).keys == gamma
    assert bongartz(wb, gamma).keys == gamma
    X = keys(wb, "M(10)")
    assert co_bongartz(wb, X).keys == keys(wb, "M(10)", "P2[1]")
    assert bongartz(wb, X).keys == keys(wb, "M(10)", "P1")


def test_weak_cluster_tilting_examples():
    wb = workbench("A2")
    assert is_weak_cluster_tilting(wb, keys(wb, "P1", "P2"))
    assert not is_weak_cluster_tilting(wb, keys(wb, "M(10)"))
    assert is_weak_cluster_tilting(wb, keys(wb, "M(10)", "P2[1]"))


def test_completion_examples():
    wb = workbench("A2")
    res = completions(wb, keys(wb, "M(10)"))
    assert res.ok and res.almost_complete
    assert set(res.found) == {keys(wb, "M(10)", "P2[1]"), keys(wb, "M(10)", "P1")}
    res = completions(wb, keys(wb, "P1"))
    assert set(res.found) == {keys(wb, "P1", "P2"), keys(wb, "P1", "M(10)")}


def test_mutation_certificate_examples():
    wb = workbench("A2")
    gamma = keys(wb, "P1", "P2")
    assert verify_mutation_pair(wb, gamma, gamma, gamma).ok
    X = keys(wb, "M(10)")
    cert = verify_mutation_pair(wb, X, keys(wb, "M(10)", "P2[1]"), keys(wb, "M(10)", "P1"))
    assert cert.ok
    assert any(wb.shift_key(2) in t.y for t in cert.triangles)


@pytest.mark.parametrize("name", list(SHAPES))
def test_weak_cluster_tilting_equals_oracle(name):
    assert set(weak_cluster_tilting(workbench(name))) == oracle_subcats(name)


@pytest.mark.parametrize("name", list(SHAPES))
def test_exactly_two_completions_against_oracle(name):
    wb = workbench(name)
    wct = oracle_subcats(name)
    n = len(wb.algebra.vertices)
    almost = {canon(X) for U in wct for X in itertools.combinations(U, n - 1)}
    for X in almost:
        containing = {U for U in wct if set(X) <= set(U)}
        assert len(containing) == 2
        res = completions(wb, X, exhaustive=False)
        assert res.ok
        assert {res.m_x, res.n_x} == containing
        assert set(res.m_x) & set(res.n_x) == set(X)


@pytest.mark.parametrize("name,edges", [("A1", 1), ("A2", 5), ("A3", 21)])
def test_exchange_graph_shape(name, edges):
    wb = workbench(name)
    g = exchange_graph(wb)
    n = len(wb.algebra.vertices)
    assert g.complete and len(g.vertices) == catalan(n + 1)
    assert len(g.edges) == edges
    oracle = sorted(oracle_subcats(name))
    assert list(g.vertices) == oracle
    assert {frozenset((m, k)) for m, k, _ in g.edges} == exchange_edges(
        [({k for k in U if k[0] == "mod"}, {k for k in U if k[0] == "shift"}) for U in oracle]
    )


def test_mutation_is_involutive():
    wb = workbench("A3")
    for U in exchange_graph(wb).vertices:
        for w in U:
            V, _ = mutate(wb, U, w)
            (w2,) = set(V) - set(U)
            back, _ = mutate(wb, V, w2)
            assert back == U


def test_complete_input_is_rejected():
    wb = workbench("A2")
    with pytest.raises(AlreadyCompleteError):
        completions(wb, keys(wb, "P1", "P2"))
