"""Exhaustive verifiers over a workbench.

Each verifier sweeps every relevant instance (rigid subcategories, support
τ-tilting pairs, pairs of both) and returns a :class:`VerifierReport`.  A
failing instance is recorded as a falsifier payload that names the objects
involved by their workbench keys and labels, so it can be fed back through
the library API.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence

from .completion import (
    Subcat,
    Workbench,
    bongartz,
    canon,
    co_bongartz,
    completions,
    exchange_graph,
    is_weak_cluster_tilting,
    r_annihilator,
    verify_mutation_pair,
)
from .torsion import (
    RefusalError,
    TauPair,
    bongartz_pair,
    cotorsion_from_sttilt,
    e_perp,
    enumerate_support_tau_tilting,
    enumerate_torsion_classes,
    fac_set,
    is_functorially_finite,
    is_tau_rigid_pair,
    is_torsion_class,
    left_bongartz,
    pair_from_torsion_class,
    partial_order_ge,
    perp_tau,
    support_tau_tilting_test,
)
from .twoterm import RigidityDisagreement, hom_k_shift1

SCHEMA = 1

THEOREM_IDS = ("main1", "m-pair", "thm1", "main", "PZZ", "main722", "CWZ2", "partial", "capcap", "cap")
ALIASES = {
    "two-completions": "main1",
    "mutation-pairs": "m-pair",
    "rigidity": "thm1",
    "fac-identities": "main",
    "bijections": "main722",
    "cotorsion": "PZZ",
    "left-bongartz": "CWZ2",
    "sandwich": "partial",
}


@dataclass
class VerifierReport:
    """Outcome of one verifier sweep.

    Attributes:
        theorem: Theorem id (see ``THEOREM_IDS``).
        instance: Human-readable description of the algebra or model.
        checked: Number of instances examined.
        falsifiers: Failing instances; empty exactly when the sweep passed.
        details: Per-theorem data such as counts or listed instances.
        seconds: Wall time of the sweep.
    """

    theorem: str
    instance: str
    checked: int = 0
    falsifiers: List[dict] = field(default_factory=list)
    details: Dict[str, object] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.falsifiers

    def fail(self, **payload) -> None:
        self.falsifiers.append(payload)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "theorem": self.theorem,
            "instance": self.instance,
            "passed": self.passed,
            "checked": self.checked,
            "falsifiers": self.falsifiers,
            "details": self.details,
        }


def _keys(keys) -> List[List]:
    return [[k, i] for k, i in keys]


def _describe(wb: Workbench, keys) -> dict:
    keys = canon(keys)
    return {"keys": _keys(keys), "labels": wb.labels(keys)}


def _pair_dict(wb: Workbench, pair: TauPair) -> dict:
    return {"modules": [wb.label(("mod", i)) for i in pair.modules], "e_vertices": list(pair.e_vertices)}


# ----------------------------------------------------------------------
# enumeration helpers


def rigid_subcategories(wb: Workbench) -> List[Subcat]:
    """Every two-term rigid subcategory (as a sorted key tuple), including the empty one."""
    keys = [k for k in wb.all_keys() if wb.shift_dim(k, k) == 0]
    nbr = {a: {b for b in keys if b != a and wb.compatible(b, (a,))} for a in keys}
    out: List[Subcat] = []

    def grow(chosen: List, candidates: List) -> None:
        out.append(canon(chosen))
        for k, c in enumerate(candidates):
            grow(chosen + [c], [d for d in candidates[k + 1:] if d in nbr[c]])

    grow([], keys)
    return sorted(out, key=lambda X: (len(X), X))


def weak_cluster_tilting(wb: Workbench) -> List[Subcat]:
    """Vertices of the exchange graph (refuses if the graph is incomplete)."""
    g = exchange_graph(wb)
    if not g.complete:
        raise RefusalError("exchange graph budget exhausted")
    return list(g.vertices)


def _timed(fn: Callable[..., VerifierReport]) -> Callable[..., VerifierReport]:
    def wrapper(*args, **kwargs):
        t = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.seconds = time.perf_counter() - t
        return rep

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ----------------------------------------------------------------------
# completions and mutation


@_timed
def verify_two_completions(wb: Workbench, instance: str = "", exhaustive: bool = True) -> VerifierReport:
    """Every almost complete X has exactly the completions M_X and N_X.

    Every rigid, not weak cluster tilting X is run through
    :func:`completions`.  With ``exhaustive`` every indecomposable is tried
    as a complement, and almost complete X must have exactly ``{M_X, N_X}``.
    Without it, almost complete X are read off the exchange graph and only
    the structural checks run.
    """
    rep = VerifierReport("main1", instance)
    listed = []
    almost = set() if exhaustive else set(almost_complete_subcategories(wb))
    for X in rigid_subcategories(wb):
        if is_weak_cluster_tilting(wb, X):
            continue
        rep.checked += 1
        try:
            res = completions(wb, X, exhaustive=exhaustive)
        except AssertionError as exc:
            rep.fail(x=_describe(wb, X), error=str(exc))
            continue
        if not res.ok:
            rep.fail(x=_describe(wb, X), checks=res.checks, found=[wb.labels(f) for f in res.found])
        if res.almost_complete or X in almost:
            listed.append({
                "x": wb.labels(X),
                "m_x": wb.labels(res.m_x),
                "n_x": wb.labels(res.n_x),
                "found": [wb.labels(f) for f in res.found],
            })
    rep.details["exhaustive"] = exhaustive
    rep.details["almost_complete"] = len(listed)
    rep.details["instances"] = listed
    return rep


def almost_complete_subcategories(wb: Workbench) -> List[Subcat]:
    """Rigid X one indecomposable short of some weak cluster tilting subcategory."""
    seen = set()
    for U in weak_cluster_tilting(wb):
        for w in U:
            seen.add(tuple(k for k in U if k != w))
    return sorted(seen)


@_timed
def verify_mutation_pairs(wb: Workbench, instance: str = "") -> VerifierReport:
    """``(M_X, N_X)`` is an X-mutation pair for every almost complete X."""
    rep = VerifierReport("m-pair", instance)
    triangles = 0
    for X in almost_complete_subcategories(wb):
        rep.checked += 1
        M = co_bongartz(wb, X, check=False).keys
        N = bongartz(wb, X, check=False).keys
        cert = verify_mutation_pair(wb, X, M, N)
        triangles += len(cert.triangles)
        if not cert.ok:
            rep.fail(
                x=_describe(wb, X),
                checks=cert.checks,
                triangles=[t._asdict() | {"z": wb.labels(t.z), "x": wb.labels(t.x), "y": wb.labels(t.y)} for t in cert.triangles if not t.ok],
            )
    rep.details["triangles"] = triangles
    return rep


@_timed
def verify_cap(wb: Workbench, instance: str = "") -> VerifierReport:
    """``R(M_X) = R(X)`` and ``N_X ∩ R[1] = X ∩ R[1]`` for every rigid X."""
    rep = VerifierReport("cap", instance)
    for X in rigid_subcategories(wb):
        rep.checked += 1
        M = co_bongartz(wb, X, check=False).keys
        N = bongartz(wb, X, check=False).keys
        if r_annihilator(wb, M) != r_annihilator(wb, X):
            rep.fail(x=_describe(wb, X), m_x=wb.labels(M), part="R(M_X) = R(X)")
        if wb.e_part(N) != wb.e_part(X):
            rep.fail(x=_describe(wb, X), n_x=wb.labels(N), part="N_X meet R[1] = X meet R[1]")
    return rep


@_timed
def verify_capcap(wb: Workbench, instance: str = "") -> VerifierReport:
    """``M_X ∩ N_X = X`` for every rigid X."""
    rep = VerifierReport("capcap", instance)
    for X in rigid_subcategories(wb):
        rep.checked += 1
        M = co_bongartz(wb, X, check=False).keys
        N = bongartz(wb, X, check=False).keys
        if set(M) & set(N) != set(X):
            rep.fail(x=_describe(wb, X), m_x=wb.labels(M), n_x=wb.labels(N))
    return rep


# ----------------------------------------------------------------------
# rigidity on both sides


@_timed
def verify_rigidity_agreement(wb: Workbench, instance: str = "", max_size: Optional[int] = None) -> VerifierReport:
    """Homotopy rigidity agrees with the τ-rigid pair test on every subset of indecomposables.

    The homotopy side uses only ``Hom_K(U, V[1])``.  The module side is
    :func:`is_tau_rigid_pair` on ``(H(X), e-part)``.  Weak cluster tilting
    subsets must moreover give support τ-tilting pairs ``(H(X), R(X))``.

    Args:
        wb: Workbench.
        instance: Description for the report.
        max_size: Largest subset size (default: number of vertices).
    """
    rep = VerifierReport("thm1", instance)
    keys = wb.all_keys()
    n = len(wb.algebra.vertices) if max_size is None else max_size
    shift = {}
    for a in keys:
        for b in keys:
            d = hom_k_shift1(wb.obj(a), wb.obj(b)).dim
            try:
                if d != wb.shift_dim(a, b):
                    raise RigidityDisagreement("cached shift dimension differs")
            except RigidityDisagreement as exc:
                rep.fail(pair=[wb.label(a), wb.label(b)], error=str(exc))
            shift[a, b] = d
    rigid_count = 0
    for k in range(n + 1):
        for X in combinations(keys, k):
            rep.checked += 1
            homotopy = all(shift[a, b] == 0 for a in X for b in X)
            module = is_tau_rigid_pair(wb.atlas, wb.to_pair(X))
            rigid_count += homotopy
            if homotopy != module:
                rep.fail(x=_describe(wb, X), homotopy=homotopy, module=module)
            if homotopy and is_weak_cluster_tilting(wb, X):
                pair = TauPair.make(wb.atlas, [i for kind, i in X if kind == "mod"], r_annihilator(wb, X))
                if not support_tau_tilting_test(wb.atlas, pair):
                    rep.fail(x=_describe(wb, X), part="(H(X), R(X)) is not support tau-tilting")
    rep.details["rigid"] = rigid_count
    return rep


# ----------------------------------------------------------------------
# Fac identities, sandwich, bijections, left Bongartz


@_timed
def verify_fac_identities(wb: Workbench, instance: str = "") -> VerifierReport:
    """``Fac M̄_X = Fac X̄`` and ``Fac N̄_X = ⊥(τX̄) ∩ Ē^⊥`` for every rigid X.

    Also checks that ``(M̄_X, R(X))`` and ``(N̄_X, E)`` are support τ-tilting,
    strictness ``Fac M̄_X ⊊ Fac N̄_X`` for incomplete X, the weak cluster
    tilting criterion ``⊥(τX̄) ∩ R(X)^⊥ = Fac X̄`` when ``E = R(X)``, and
    that an almost complete X lies in exactly two support τ-tilting pairs.
    """
    rep = VerifierReport("main", instance)
    at = wb.atlas
    all_pairs = enumerate_support_tau_tilting(at)
    strict = 0
    for X in rigid_subcategories(wb):
        rep.checked += 1
        Xp = wb.to_pair(X)
        E = Xp.e_vertices
        RX = r_annihilator(wb, X)
        M = co_bongartz(wb, X, check=False).keys
        N = bongartz(wb, X, check=False).keys
        Mp, Np = wb.to_pair(M), wb.to_pair(N)
        fac_x = fac_set(at, Xp.modules)
        fac_m = fac_set(at, Mp.modules)
        fac_n = fac_set(at, Np.modules)
        target = perp_tau(at, Xp.modules) & e_perp(at, E)
        wct = is_weak_cluster_tilting(wb, X)
        problems = []
        if fac_m != fac_x:
            problems.append("Fac M_X != Fac X")
        if fac_n != target:
            problems.append("Fac N_X != perp(tau X) meet E-perp")
        if not support_tau_tilting_test(at, TauPair.make(at, Mp.modules, RX)):
            problems.append("(M_X, R(X)) not support tau-tilting")
        if not support_tau_tilting_test(at, TauPair.make(at, Np.modules, E)):
            problems.append("(N_X, E) not support tau-tilting")
        if not wct:
            strict += 1
            if not fac_m < fac_n:
                problems.append("Fac M_X is not a proper subset of Fac N_X")
        if tuple(E) == tuple(RX):
            if wct != (perp_tau(at, Xp.modules) & e_perp(at, RX) == fac_x):
                problems.append("weak cluster tilting criterion fails")
        if not wct and len(M) == len(X) + 1 and len(N) == len(X) + 1:
            containing = [
                P for P in all_pairs if set(Xp.modules) <= set(P.modules) and set(E) <= set(P.e_vertices)
            ]
            if sorted(containing) != sorted({TauPair.make(at, Mp.modules, RX), TauPair.make(at, Np.modules, E)}):
                problems.append(f"{len(containing)} support tau-tilting pairs contain X")
        if problems:
            rep.fail(x=_describe(wb, X), problems=problems)
    rep.details["strict_instances"] = strict
    return rep


@_timed
def verify_sandwich(wb: Workbench, instance: str = "") -> VerifierReport:
    """``L ⊇ X`` iff ``N̄_X ≥ L̄ ≥ M̄_X`` for every rigid X and weak cluster tilting L."""
    rep = VerifierReport("partial", instance)
    at = wb.atlas
    Ls = [(L, wb.to_pair(L)) for L in weak_cluster_tilting(wb)]
    for X in rigid_subcategories(wb):
        Mp = wb.to_pair(co_bongartz(wb, X, check=False).keys)
        Np = wb.to_pair(bongartz(wb, X, check=False).keys)
        for L, Lp in Ls:
            rep.checked += 1
            lhs = set(X) <= set(L)
            rhs = partial_order_ge(at, Np, Lp) and partial_order_ge(at, Lp, Mp)
            if lhs != rhs:
                rep.fail(x=_describe(wb, X), l=_describe(wb, L), contains=lhs, sandwiched=rhs)
    return rep


@_timed
def verify_cotorsion(wb: Workbench, instance: str = "") -> VerifierReport:
    """Every support τ-tilting pair gives a τ-cotorsion torsion pair with ``U ∩ V = add M``."""
    rep = VerifierReport("PZZ", instance)
    for pair in enumerate_support_tau_tilting(wb.atlas):
        rep.checked += 1
        ct = cotorsion_from_sttilt(wb.atlas, pair)
        if not (ct.round_trip and all(ct.flags.values())):
            rep.fail(pair=_pair_dict(wb, pair), flags=ct.flags, round_trip=ct.round_trip)
        if ct.tau_cotorsion_torsion != ct.left_weak_cotorsion_torsion:
            rep.fail(pair=_pair_dict(wb, pair), part="tau-cotorsion torsion and left weak cotorsion torsion differ")
    return rep


@_timed
def verify_bijections(wb: Workbench, instance: str = "", max_atlas: int = 20) -> VerifierReport:
    """Support τ-tilting pairs, torsion classes and cotorsion torsion pairs match up.

    Pairs come from the module-side enumeration and are compared with the
    exchange graph.  ``M ↦ Fac M`` must be injective with image the
    functorially finite torsion classes; ``T ↦ ⊥1T ∩ T`` must invert it.
    Torsion classes are enumerated independently by filtering all atlas
    subsets when the atlas has at most ``max_atlas`` modules; otherwise
    only injectivity and round trips are checked and the report says so.
    """
    rep = VerifierReport("main722", instance)
    at = wb.atlas
    pairs = enumerate_support_tau_tilting(at)
    graph_pairs = sorted(wb.to_pair(U) for U in weak_cluster_tilting(wb))
    if pairs != graph_pairs:
        rep.fail(part="module enumeration differs from the exchange graph", module=len(pairs), graph=len(graph_pairs))
    classes = {}
    tau_ctp = lw_ctp = 0
    for pair in pairs:
        rep.checked += 1
        T = fac_set(at, pair.modules)
        if T in classes:
            rep.fail(pair=_pair_dict(wb, pair), part="Fac is not injective")
        classes[T] = pair
        if not (is_torsion_class(at, T) and is_functorially_finite(at, T)):
            rep.fail(pair=_pair_dict(wb, pair), part="Fac M is not a functorially finite torsion class")
        if pair_from_torsion_class(at, T) != pair:
            rep.fail(pair=_pair_dict(wb, pair), part="round trip through the torsion class fails")
        ct = cotorsion_from_sttilt(at, pair)
        tau_ctp += ct.tau_cotorsion_torsion
        lw_ctp += ct.left_weak_cotorsion_torsion
        if not ct.round_trip:
            rep.fail(pair=_pair_dict(wb, pair), part="U meet V differs from add M")
    rep.details.update(pairs=len(pairs), tau_cotorsion_torsion=tau_ctp, left_weak_cotorsion_torsion=lw_ctp)
    if tau_ctp != len(pairs) or lw_ctp != len(pairs):
        rep.fail(part="cotorsion torsion counts differ", counts=[len(pairs), tau_ctp, lw_ctp])
    try:
        torsion = enumerate_torsion_classes(at, max_size=max_atlas)
    except RefusalError as exc:
        rep.details["surjectivity"] = f"partial: {exc}"
        return rep
    ff = [T for T in torsion if is_functorially_finite(at, T)]
    rep.details["torsion_classes"] = len(torsion)
    rep.details["surjectivity"] = "checked"
    if set(ff) != set(classes):
        rep.fail(part="torsion classes not all of the form Fac M", torsion=len(ff), pairs=len(classes))
    return rep


@_timed
def verify_left_bongartz(wb: Workbench, instance: str = "", dim_cap: int = 8) -> VerifierReport:
    """``left_bongartz`` on every τ-rigid X and every support τ-tilting L below its Bongartz completion."""
    rep = VerifierReport("CWZ2", instance)
    at = wb.atlas
    pairs = enumerate_support_tau_tilting(at)
    cross = 0
    for X in rigid_subcategories(wb):
        Xp = wb.to_pair(X)
        N = bongartz_pair(at, Xp)
        for L in pairs:
            if not partial_order_ge(at, N, L):
                continue
            rep.checked += 1
            try:
                res = left_bongartz(at, Xp, L, dim_cap=dim_cap)
            except (AssertionError, ValueError) as exc:
                rep.fail(x=_pair_dict(wb, Xp), l=_pair_dict(wb, L), error=str(exc))
                continue
            cross += res.cross_checked
            if L == N and res.pair != N:
                rep.fail(x=_pair_dict(wb, Xp), l=_pair_dict(wb, L), part="L = N_X does not return N_X")
    rep.details["star_cross_checks"] = cross
    return rep


VERIFIERS: Dict[str, Callable[..., VerifierReport]] = {
    "main1": verify_two_completions,
    "m-pair": verify_mutation_pairs,
    "thm1": verify_rigidity_agreement,
    "main": verify_fac_identities,
    "PZZ": verify_cotorsion,
    "main722": verify_bijections,
    "CWZ2": verify_left_bongartz,
    "partial": verify_sandwich,
    "capcap": verify_capcap,
    "cap": verify_cap,
}


def resolve_theorem(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in VERIFIERS:
        raise KeyError(f"unknown theorem id {name!r}; choose from {', '.join(THEOREM_IDS + tuple(ALIASES))}")
    return name


def run_verifier(name: str, wb: Workbench, instance: str = "") -> VerifierReport:
    return VERIFIERS[resolve_theorem(name)](wb, instance)


def run_all(wb: Workbench, instance: str = "", names: Sequence[str] = THEOREM_IDS) -> List[VerifierReport]:
    return [run_verifier(n, wb, instance) for n in names]
