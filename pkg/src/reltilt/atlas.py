"""Indecomposable atlases by knitting the Auslander-Reiten quiver.

Starting from the indecomposable projectives and injectives, the knitting
closes the set under τ, τ⁻, almost split sequences, radicals of projectives
and socle quotients of injectives.  For a representation-finite algebra the
result is every indecomposable module up to isomorphism.
"""

from __future__ import annotations

from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import field as F
from .algebra import BoundQuiverAlgebra
from .modules import (
    ModuleError,
    Representation,
    RepHom,
    ar_translate,
    extension_middle,
    ext1_dim,
    hom_basis,
    hom_from_flat,
    hom_from_projective,
    injective_module,
    inverse_ar_translate,
    is_injective,
    is_projective,
    isomorphic_indecomposables,
    minimal_projective_presentation,
    projective_module,
    quotient,
    radical_bases,
    radical_of_endomorphisms,
    socle_bases,
    split,
    submodule,
    generator_images,
)


class IncompleteAtlasError(RuntimeError):
    """Raised by exhaustive routines that need a complete atlas."""


def almost_split_middle(M: Representation) -> Tuple[Representation, Representation]:
    """Middle term of the almost split sequence ``0 -> τM -> E -> M -> 0``.

    The extension class is chosen in the socle of Ext¹(M, τM) as an
    End(M)-module, i.e. killed by every radical endomorphism of ``M``.

    Args:
        M: Indecomposable non-projective module.

    Returns:
        ``(τM, E)``.
    """
    p = M.p
    tau = ar_translate(M, strip=False)
    if tau.is_zero():
        raise ModuleError("almost split sequences end in non-projective modules")
    pres = minimal_projective_presentation(M)
    omega, inc = pres.syzygy, pres.syzygy_inclusion
    P0 = pres.cover.source
    H = hom_basis(omega, tau)
    width = sum(a * b for a, b in zip(omega.dims, tau.dims))
    Hmat = np.array([h.flat() for h in H], dtype=np.int64).reshape(len(H), width)
    inner = [inc.then(f).flat() for f in hom_basis(P0, tau)]
    I = F.row_basis(np.array(inner, dtype=np.int64).reshape(len(inner), width), p) if inner else F.zeros(0, width)
    Q = F.nullspace(I, p).T if I.shape[0] else F.identity(width)  # v ∈ span(I) iff v @ Q == 0
    conditions = []
    for r in radical_of_endomorphisms(M):
        r_omega = _restrict_to_syzygy(pres, r)
        W = np.array([r_omega.then(h).flat() for h in H], dtype=np.int64).reshape(len(H), width)
        conditions.append(F.matmul(W, Q, p=p))
    if conditions:
        sols = F.left_nullspace(np.hstack(conditions), p)
    else:
        sols = F.identity(len(H))
    eta = None
    for c in sols:
        v = F.matmul(c.reshape(1, -1), Hmat, p=p)[0]
        if np.any(F.matmul(v.reshape(1, -1), Q, p=p)):
            eta = hom_from_flat(omega, tau, v)
            break
    if eta is None:
        raise ModuleError("no nonsplit socle extension found")
    return tau, extension_middle(pres, eta)


def _restrict_to_syzygy(pres, r: RepHom) -> RepHom:
    """Lift an endomorphism of M to P0 and restrict it to ΩM."""
    p = r.p
    cover = pres.cover
    P0 = cover.source
    vi = P0.algebra.quiver.vertex_index
    gens = []
    for g, v in zip(generator_images(cover), P0.proj_vertices):
        target = F.matmul(g.reshape(1, -1), r.mats[vi[v]], p=p)[0]
        sol, _ = F.solve(cover.mats[vi[v]].T, target, p)
        gens.append(sol)
    lift = hom_from_projective(P0, P0, gens)
    omega, inc = pres.syzygy, pres.syzygy_inclusion
    mats = []
    for i in range(len(omega.dims)):
        img = F.matmul(inc.mats[i], lift.mats[i], p=p)
        if inc.mats[i].shape[0] == 0:
            mats.append(F.zeros(0, 0))
            continue
        mats.append(F.express(inc.mats[i], img, p))
    return RepHom(omega, omega, mats)


class IndecomposableAtlas:
    """Pairwise non-isomorphic indecomposables with AR data and Hom caches.

    Attributes:
        modules: The indecomposable modules.
        complete: True when knitting closed without hitting the budget.
        ar_arrows: ``{(i, j): multiplicity}`` irreducible maps M_i -> M_j.
        tau: ``{i: j}`` with τM_i ≅ M_j for non-projective M_i.
    """

    def __init__(self, algebra: BoundQuiverAlgebra, modules: Sequence[Representation], complete: bool,
                 ar_arrows: Optional[Dict[Tuple[int, int], int]] = None, tau: Optional[Dict[int, int]] = None):
        self.algebra = algebra
        self.modules: List[Representation] = list(modules)
        self.complete = complete
        self.ar_arrows = dict(ar_arrows or {})
        self.tau = dict(tau or {})
        self._hom: Dict[Tuple[int, int], List[RepHom]] = {}
        self._ext: Dict[Tuple[int, int], int] = {}
        self._pres: Dict[int, object] = {}
        self._tau: Dict[Tuple[int, int], int] = {}
        self._cx: Dict[int, object] = {}

    def __len__(self) -> int:
        return len(self.modules)

    def require_complete(self) -> None:
        if not self.complete:
            raise IncompleteAtlasError("atlas is incomplete (knitting budget exhausted); exhaustive checks refused")

    def find(self, M: Representation) -> Optional[int]:
        """Index of the atlas module isomorphic to the indecomposable ``M``."""
        for i, N in enumerate(self.modules):
            if N.dims == M.dims and isomorphic_indecomposables(N, M):
                return i
        return None

    def add(self, M: Representation) -> int:
        """Index of ``M``, registering it if new (for incomplete atlases)."""
        i = self.find(M)
        if i is None:
            self.modules.append(M)
            i = len(self.modules) - 1
        return i

    def decompose(self, M: Representation) -> List[int]:
        """Atlas indices of the indecomposable summands of ``M`` (with repeats)."""
        out = []
        for N, _ in split(M):
            i = self.find(N)
            if i is None:
                if self.complete:
                    raise ModuleError("summand missing from a complete atlas")
                i = self.add(N)
            out.append(i)
        return sorted(out)

    def homs(self, i: int, j: int) -> List[RepHom]:
        key = (i, j)
        if key not in self._hom:
            self._hom[key] = hom_basis(self.modules[i], self.modules[j])
        return self._hom[key]

    def hom_dim(self, i: int, j: int) -> int:
        return len(self.homs(i, j))

    def ext_dim(self, i: int, j: int) -> int:
        key = (i, j)
        if key not in self._ext:
            self._ext[key] = ext1_dim(self.modules[i], self.modules[j])
        return self._ext[key]

    def tau_hom_dim(self, i: int, j: int) -> int:
        """``dim Hom(M_j, τM_i)``, read off the presentation of ``M_i``.

        It is the dimension of the cokernel of ``Hom(P0, M_j) -> Hom(P1, M_j)``
        induced by the minimal presentation ``P1 -> P0`` of ``M_i``.
        """
        from .twoterm import module_shift_obstruction

        key = (i, j)
        if key not in self._tau:
            self._tau[key] = module_shift_obstruction(self.complex(i), self.modules[j])
        return self._tau[key]

    def complex(self, i: int):
        """Minimal presentation of ``M_i`` as a two-term complex (cached)."""
        from .twoterm import TwoTermComplex

        if i not in self._cx:
            self._cx[i] = TwoTermComplex.from_module(self.modules[i])
        return self._cx[i]

    def presentation(self, i: int):
        if i not in self._pres:
            self._pres[i] = minimal_projective_presentation(self.modules[i])
        return self._pres[i]

    def projective_indices(self) -> List[int]:
        return [i for i, M in enumerate(self.modules) if is_projective(M)]

    def projective_index(self, v) -> int:
        i = self.find(projective_module(self.algebra, (v,)))
        if i is None:
            raise ModuleError(f"projective at {v!r} missing from the atlas")
        return i

    def label(self, i: int) -> str:
        return "M" + "".join(str(d) for d in self.modules[i].dims) + f"#{i}"

    def sorted_indices(self, idx) -> List[int]:
        return sorted(idx, key=lambda i: (self.modules[i].dims, i))


def knit_atlas(alg: BoundQuiverAlgebra, budget: int = 200) -> IndecomposableAtlas:
    """Knit the AR quiver of ``alg`` starting from projectives and injectives.

    Args:
        alg: The algebra.
        budget: Maximum number of indecomposables to collect.

    Returns:
        An atlas; ``complete`` is False if the budget was exhausted.
    """
    found: List[Representation] = []
    by_dims: Dict[Tuple[int, ...], List[int]] = {}
    queue: deque = deque()
    arrows: Dict[Tuple[int, int], int] = {}
    tau: Dict[int, int] = {}

    def lookup(M: Representation) -> Optional[int]:
        for i in by_dims.get(M.dims, []):
            if isomorphic_indecomposables(found[i], M):
                return i
        return None

    def register(M: Representation) -> Optional[int]:
        i = lookup(M)
        if i is not None:
            return i
        if len(found) >= budget:
            return None
        found.append(M)
        by_dims.setdefault(M.dims, []).append(len(found) - 1)
        queue.append(len(found) - 1)
        return len(found) - 1

    complete = True
    seeds = [projective_module(alg, (v,)) for v in alg.vertices] + [injective_module(alg, (v,)) for v in alg.vertices]
    for M in seeds:
        for N, _ in split(M):
            if register(N) is None:
                complete = False
    while queue and complete:
        i = queue.popleft()
        M = found[i]
        incoming: List[int] = []
        if is_projective(M):
            rad, _ = submodule(M, radical_bases(M))
            parts = [N for N, _ in split(rad)]
        else:
            tM, E = almost_split_middle(M)
            t = register(tM)
            if t is None:
                complete = False
                break
            tau[i] = t
            parts = [N for N, _ in split(E)]
        for N in parts:
            j = register(N)
            if j is None:
                complete = False
                break
            incoming.append(j)
        for j in incoming:
            arrows[(j, i)] = arrows.get((j, i), 0) + 1
        if not is_injective(M):
            if register(inverse_ar_translate(M, strip=False)) is None:
                complete = False
        else:
            Q, _ = quotient(M, socle_bases(M))
            for N, _ in split(Q):
                if register(N) is None:
                    complete = False
    return IndecomposableAtlas(alg, found, complete and not queue, arrows, tau)
