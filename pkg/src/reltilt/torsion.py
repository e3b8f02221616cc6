"""Torsion classes, τ-rigid pairs and cotorsion-type pairs over an atlas.

Everything here works with a complete :class:`IndecomposableAtlas`; classes
of modules are frozensets of atlas indices (add-closure implicit).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Sequence, Tuple

import numpy as np

from . import field as F
from .atlas import IndecomposableAtlas
from .modules import (
    Representation,
    cokernel,
    count_subspaces,
    ext1_classes,
    extension_middle,
    hom_basis,
    hom_dim,
    image_bases,
    in_fac,
    left_approximation,
    minimal_projective_presentation,
    projective_module,
    quotient,
    right_approximation,
    kernel,
    subobject_list,
    trace_bases,
)

IndexSet = FrozenSet[int]


class RefusalError(RuntimeError):
    """An exhaustive routine refused to run (incomplete atlas or size cap)."""


class TauPair(NamedTuple):
    """A pair (module part, projective vertex set).

    Attributes:
        modules: Sorted atlas indices of the indecomposable module part.
        e_vertices: Sorted vertices ``v`` standing for ``P_v``.
    """

    modules: Tuple[int, ...]
    e_vertices: Tuple

    @classmethod
    def make(cls, atlas: IndecomposableAtlas, modules: Iterable[int], e_vertices: Iterable = ()) -> "TauPair":
        vi = atlas.algebra.quiver.vertex_index
        return cls(tuple(sorted(set(modules))), tuple(sorted(set(e_vertices), key=vi.__getitem__)))


def _require(atlas: IndecomposableAtlas) -> None:
    if not atlas.complete:
        raise RefusalError("atlas is incomplete (knitting budget exhausted); exhaustive checks refused")


# ----------------------------------------------------------------------
# basic classes


def fac_set(atlas: IndecomposableAtlas, S: Iterable[int]) -> IndexSet:
    """Atlas modules lying in Fac(add S)."""
    _require(atlas)
    S = sorted(set(S))
    out = set()
    for a, A in enumerate(atlas.modules):
        homs = (f for s in S for f in atlas.homs(s, a))
        dim = sum(b.shape[0] for b in image_bases(homs, A))
        if dim == A.total_dim:
            out.add(a)
    return frozenset(out)


def fac_closure(atlas: IndecomposableAtlas, S: Iterable[int]) -> Tuple[IndexSet, bool]:
    """Fac(add S) together with an extension-closure flag.

    The flag is the outcome of :func:`is_torsion_class`, which for a
    quotient-closed class is equivalent to closure under extensions.
    """
    T = fac_set(atlas, S)
    return T, is_torsion_class(atlas, T)


def perp_tau(atlas: IndecomposableAtlas, U: Iterable[int]) -> IndexSet:
    """``⊥(τU)``: modules ``A`` with ``Hom(P0, A) -> Hom(P1, A)`` onto for each ``U_i``."""
    _require(atlas)
    U = list(U)
    return frozenset(a for a in range(len(atlas)) if all(atlas.tau_hom_dim(u, a) == 0 for u in U))


def e_perp(atlas: IndecomposableAtlas, E: Iterable) -> IndexSet:
    """Modules vanishing at every vertex of ``E``."""
    vi = atlas.algebra.quiver.vertex_index
    E = list(E)
    return frozenset(a for a, A in enumerate(atlas.modules) if all(A.dims[vi[v]] == 0 for v in E))


def hom_right_perp(atlas: IndecomposableAtlas, T: Iterable[int]) -> IndexSet:
    """``T^⊥ = {B : Hom(T, B) = 0}``."""
    T = list(T)
    return frozenset(b for b in range(len(atlas)) if all(atlas.hom_dim(t, b) == 0 for t in T))


def hom_left_perp(atlas: IndecomposableAtlas, Y: Iterable[int]) -> IndexSet:
    """``⊥Y = {A : Hom(A, Y) = 0}``."""
    Y = list(Y)
    return frozenset(a for a in range(len(atlas)) if all(atlas.hom_dim(a, y) == 0 for y in Y))


def ext_left_perp(atlas: IndecomposableAtlas, V: Iterable[int]) -> IndexSet:
    """``⊥1 V = {A : Ext¹(A, V) = 0}``."""
    V = list(V)
    return frozenset(a for a in range(len(atlas)) if all(atlas.ext_dim(a, v) == 0 for v in V))


def zero_vertices(atlas: IndecomposableAtlas, S: Iterable[int]) -> Tuple:
    """Vertices ``v`` with ``Hom(P_v, S) = 0``."""
    vi = atlas.algebra.quiver.vertex_index
    S = list(S)
    return tuple(v for v in atlas.algebra.vertices if all(atlas.modules[s].dims[vi[v]] == 0 for s in S))


def is_quotient_closed(atlas: IndecomposableAtlas, T: Iterable[int]) -> bool:
    T = frozenset(T)
    return fac_set(atlas, T) == T


def is_torsion_class(atlas: IndecomposableAtlas, T: Iterable[int]) -> bool:
    """``T = ⊥(T^⊥)``, which holds exactly for torsion classes."""
    T = frozenset(T)
    return hom_left_perp(atlas, hom_right_perp(atlas, T)) == T


def probe_extension_closed(atlas: IndecomposableAtlas, T: Iterable[int], seed: int = 0) -> bool:
    """Check extension closure on basis classes and one random class per pair.

    For each ``A, C`` in ``T`` the middle terms of the extensions
    ``0 -> C -> E -> A -> 0`` given by a basis of Ext¹(A, C), and by one
    random combination, must have all summands in ``T``.
    """
    T = frozenset(T)
    rng = np.random.default_rng(seed)
    p = atlas.algebra.p
    for a in T:
        pres = minimal_projective_presentation(atlas.modules[a])
        for c in T:
            classes = ext1_classes(atlas.modules[a], atlas.modules[c], pres)
            if not classes:
                continue
            trial = list(classes)
            coeffs = rng.integers(1, p, size=len(classes))
            mix = classes[0].scale(int(coeffs[0]))
            for k in range(1, len(classes)):
                mix = mix + classes[k].scale(int(coeffs[k]))
            trial.append(mix)
            for eta in trial:
                E = extension_middle(pres, eta)
                if not set(atlas.decompose(E)) <= T:
                    return False
    return True


# ----------------------------------------------------------------------
# τ-rigid and support τ-tilting pairs


def is_tau_rigid_pair(atlas: IndecomposableAtlas, pair: TauPair) -> bool:
    vi = atlas.algebra.quiver.vertex_index
    for i in pair.modules:
        for j in pair.modules:
            if atlas.tau_hom_dim(i, j):
                return False
    return all(atlas.modules[m].dims[vi[v]] == 0 for m in pair.modules for v in pair.e_vertices)


def support_tau_tilting_test(atlas: IndecomposableAtlas, pair: TauPair) -> bool:
    """Whether ``pair`` is a support τ-tilting pair.

    Requires τ-rigidity, ``E = {v : Hom(P_v, M) = 0}`` exactly, and for every
    projective ``P`` a minimal left add(M)-approximation whose cokernel lies
    in add(M).
    """
    _require(atlas)
    if not is_tau_rigid_pair(atlas, pair):
        return False
    if tuple(pair.e_vertices) != zero_vertices(atlas, pair.modules):
        return False
    mods = [atlas.modules[i] for i in pair.modules]
    allowed = set(pair.modules)
    for v in atlas.algebra.vertices:
        P = projective_module(atlas.algebra, (v,))
        approx = left_approximation(P, mods)
        Q, _ = cokernel(approx.map)
        if not Q.is_zero() and not set(atlas.decompose(Q)) <= allowed:
            return False
    return True


def pair_from_torsion_class(atlas: IndecomposableAtlas, T: Iterable[int]) -> TauPair:
    """``T ↦ (⊥1T ∩ T, {v : Hom(P_v, T) = 0})``."""
    T = frozenset(T)
    mods = ext_left_perp(atlas, T) & T
    return TauPair.make(atlas, mods, zero_vertices(atlas, T))


def partial_order_ge(atlas: IndecomposableAtlas, M: TauPair, N: TauPair) -> bool:
    """``M ≥ N`` iff ``Fac M ⊇ Fac N``."""
    return fac_set(atlas, M.modules) >= fac_set(atlas, N.modules)


# ----------------------------------------------------------------------
# torsion class enumeration


def enumerate_torsion_classes(atlas: IndecomposableAtlas, max_size: int = 20) -> List[IndexSet]:
    """All torsion classes, by filtering every subset of the atlas.

    Raises:
        RefusalError: if the atlas has more than ``max_size`` modules.
    """
    _require(atlas)
    n = len(atlas)
    if n > max_size:
        raise RefusalError(f"atlas of size {n} exceeds the subset-enumeration cap {max_size}")
    H = np.array([[atlas.hom_dim(i, j) for j in range(n)] for i in range(n)], dtype=np.int64)
    out = []
    for mask in range(1 << n):
        T = [i for i in range(n) if mask >> i & 1]
        perp = [b for b in range(n) if not H[T, b].any()] if T else list(range(n))
        back = [a for a in range(n) if not H[a, perp].any()] if perp else list(range(n))
        if back == T:
            out.append(frozenset(T))
    return out


def is_functorially_finite(atlas: IndecomposableAtlas, T: Iterable[int]) -> bool:
    """Certify covariant finiteness by exhibiting a left T-approximation of every module.

    Each approximation ``A -> T_A`` is re-verified: for every ``X`` in ``T``
    the maps ``T_A -> X`` composed with it must span ``Hom(A, X)``.
    """
    mods = [atlas.modules[t] for t in sorted(T)]
    p = atlas.algebra.p
    for A in atlas.modules:
        approx = left_approximation(A, mods)
        for X in mods:
            need = hom_dim(A, X)
            rows = [approx.map.then(g).flat() for g in hom_basis(approx.obj, X)]
            got = F.rank(np.array(rows, dtype=np.int64), p) if rows and need else 0
            if got != need:
                return False
    return True


# ----------------------------------------------------------------------
# cotorsion-type pairs


@dataclass
class CotorsionTorsionPair:
    """``(U, V)`` attached to a support τ-tilting pair with its condition flags."""

    u_class: IndexSet
    v_class: IndexSet
    flags: Dict[str, bool] = field(default_factory=dict)
    round_trip: bool = False

    @property
    def tau_cotorsion_torsion(self) -> bool:
        return self.flags["a1"] and self.flags["a2"] and self.flags["c1'"]

    @property
    def left_weak_cotorsion_torsion(self) -> bool:
        return self.flags["b1"] and self.flags["b2"] and self.flags["c1'"]


def _summands_in(atlas: IndecomposableAtlas, M: Representation, cls: IndexSet) -> bool:
    return M.is_zero() or set(atlas.decompose(M)) <= cls


def cotorsion_from_sttilt(atlas: IndecomposableAtlas, pair: TauPair) -> CotorsionTorsionPair:
    """The pair ``(⊥1 Fac M, Fac M)`` with every condition flag evaluated.

    Args:
        atlas: Complete atlas.
        pair: A support τ-tilting pair.
    """
    _require(atlas)
    V = fac_set(atlas, pair.modules)
    U = ext_left_perp(atlas, V)
    flags = {}
    # (a1) recounted through explicit Ext¹ classes rather than the cached dimensions behind U
    flags["a1"] = all(
        all(not ext1_classes(A, atlas.modules[v], atlas.presentation(a)) for v in V) == (a in U)
        for a, A in enumerate(atlas.modules)
    )
    UV = U & V
    Vm = [atlas.modules[v] for v in sorted(V)]
    Um = [atlas.modules[u] for u in sorted(U)]
    a2 = True
    for v in atlas.algebra.vertices:
        P = projective_module(atlas.algebra, (v,))
        approx = left_approximation(P, Vm)
        Q, _ = cokernel(approx.map)
        a2 &= _summands_in(atlas, approx.obj, UV) and _summands_in(atlas, Q, U)
    flags["a2"] = a2
    flags["b1"] = all(atlas.ext_dim(u, v) == 0 for u in U for v in V)
    b2 = True
    for A in atlas.modules:
        # first sequence: minimal right add(U)-approximation, onto with kernel in V
        ra = right_approximation(A, Um)
        onto = ra.map.rank() == A.total_dim
        K, _ = kernel(ra.map)
        first = onto and _summands_in(atlas, K, V)
        la = left_approximation(A, Vm)
        Q, _ = cokernel(la.map)
        second = _summands_in(atlas, Q, U)
        b2 &= first and second
    flags["b2"] = b2
    flags["c1"] = fac_set(atlas, V) == V
    flags["c1'"] = is_torsion_class(atlas, V)
    flags["c2"] = probe_extension_closed(atlas, V)
    round_trip = UV == frozenset(pair.modules)
    return CotorsionTorsionPair(U, V, flags, round_trip)


# ----------------------------------------------------------------------
# left Bongartz completion


def _in_star(atlas: IndecomposableAtlas, A: Representation, X: Sequence[Representation], L: Sequence[Representation]) -> bool:
    """``A ∈ Fac X * Fac L`` via the quotient of ``A`` by its Fac X-trace."""
    Q, _ = quotient(A, trace_bases(A, X))
    return Q.is_zero() or in_fac(Q, L)


def _in_star_by_subobjects(A: Representation, X: Sequence[Representation], L: Sequence[Representation], dim_cap: int) -> bool:
    for W, inc in subobject_list(A, dim_cap=dim_cap):
        if W.is_zero() or in_fac(W, X):
            Q, _ = cokernel(inc)
            if Q.is_zero() or in_fac(Q, L):
                return True
    return False


class LeftBongartzResult(NamedTuple):
    pair: TauPair
    torsion_class: IndexSet
    cross_checked: int


def bongartz_pair(atlas: IndecomposableAtlas, X: TauPair) -> TauPair:
    """Module-side Bongartz completion, from the torsion class ``⊥(τX) ∩ E^⊥``."""
    return pair_from_torsion_class(atlas, perp_tau(atlas, X.modules) & e_perp(atlas, X.e_vertices))


def left_bongartz(atlas: IndecomposableAtlas, X: TauPair, L: TauPair, dim_cap: int = 8) -> LeftBongartzResult:
    """The completion ``(L⁻, Q⁻)`` attached to ``T = Fac X * Fac L``.

    Args:
        atlas: Complete atlas.
        X: τ-rigid pair.
        L: Support τ-tilting pair below the Bongartz completion of ``X``.
        dim_cap: Subobject cap for the cross-check of star membership.

    Raises:
        ValueError: if ``L`` is not below the Bongartz completion of ``X``.
    """
    _require(atlas)
    N = bongartz_pair(atlas, X)
    if not partial_order_ge(atlas, N, L):
        raise ValueError("hypothesis fails: the Bongartz completion of X is not >= L")
    Xm = [atlas.modules[i] for i in X.modules]
    Lm = [atlas.modules[i] for i in L.modules]
    T = frozenset(a for a, A in enumerate(atlas.modules) if _in_star(atlas, A, Xm, Lm))
    checked = 0
    for a, A in enumerate(atlas.modules):
        if A.total_dim > dim_cap:
            continue
        total = 1
        for d in A.dims:
            total *= count_subspaces(d, A.p)
        if total > 20000:
            continue
        if _in_star_by_subobjects(A, Xm, Lm, dim_cap) != (a in T):
            raise AssertionError(f"star membership disagreement on atlas module {a}")
        checked += 1
    if not is_torsion_class(atlas, T):
        raise AssertionError("Fac X * Fac L is not a torsion class")
    pair = pair_from_torsion_class(atlas, T)
    if not support_tau_tilting_test(atlas, pair):
        raise AssertionError("left Bongartz pair is not support τ-tilting")
    if not (set(X.modules) <= set(pair.modules) and set(X.e_vertices) <= set(pair.e_vertices)):
        raise AssertionError("left Bongartz pair does not contain X")
    return LeftBongartzResult(pair, T, checked)


def enumerate_support_tau_tilting(atlas: IndecomposableAtlas) -> List[TauPair]:
    """Every support τ-tilting pair, found as τ-rigid pairs with ``|M| + |E| = n``.

    τ-rigid module sets are grown as cliques of the pairwise τ-rigidity
    graph; ``E`` is then forced to be the set of vertices where ``M``
    vanishes.  Each candidate is re-checked with
    :func:`support_tau_tilting_test`.
    """
    _require(atlas)
    n = len(atlas.algebra.vertices)
    size = len(atlas)
    ok = [i for i in range(size) if atlas.tau_hom_dim(i, i) == 0]
    compat = {i: {j for j in ok if j != i and atlas.tau_hom_dim(i, j) == 0 and atlas.tau_hom_dim(j, i) == 0} for i in ok}
    out: List[TauPair] = []

    def grow(chosen: List[int], candidates: List[int]) -> None:
        E = zero_vertices(atlas, chosen)
        if len(chosen) + len(E) == n:
            pair = TauPair.make(atlas, chosen, E)
            if not support_tau_tilting_test(atlas, pair):
                raise AssertionError(f"τ-rigid pair {pair} with n summands fails the support τ-tilting test")
            out.append(pair)
        for k, c in enumerate(candidates):
            grow(chosen + [c], [d for d in candidates[k + 1:] if d in compat[c]])

    grow([], ok)
    return sorted(out)
