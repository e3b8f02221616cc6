"""Relative rigid subcategories: completions, mutation pairs, exchange graphs.

Subcategories of two-term objects are finite sets of keys naming
indecomposables: ``("mod", i)`` is the minimal presentation of atlas module
``i`` and ``("shift", k)`` is the stalk ``P_v[1]`` for the k-th vertex.  A
subcategory is stored as a sorted tuple of keys, so equality is syntactic.
"""

from __future__ import annotations

from collections import deque
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .algebra import BoundQuiverAlgebra
from .atlas import IndecomposableAtlas, knit_atlas
from .modules import ModuleError, cokernel
from .torsion import RefusalError, TauPair, support_tau_tilting_test
from .twoterm import (
    ConeError,
    RigidityDisagreement,
    TwoTermComplex,
    cocone,
    cone,
    cone_h0_dim,
    decompose_two_term,
    hom_k,
    hom_k_shift1,
    left_approx_tt,
    module_shift_obstruction,
    right_approx_tt,
)

Key = Tuple[str, int]
Subcat = Tuple[Key, ...]


class AlreadyCompleteError(ValueError):
    """Raised when asked to complete a weak cluster tilting subcategory."""


class NotRigidError(ValueError):
    """Raised when an operation needs a two-term rigid subcategory."""


def canon(keys: Iterable[Key]) -> Subcat:
    return tuple(sorted(set(keys)))


class Workbench:
    """Caches indecomposable two-term objects and their homotopy Homs.

    Args:
        algebra: The algebra ``A``; R is add A.
        atlas: A precomputed atlas (knitted when omitted).
        budget: Knitting budget.
    """

    def __init__(self, algebra: BoundQuiverAlgebra, atlas: Optional[IndecomposableAtlas] = None, budget: int = 200):
        self.algebra = algebra
        self.atlas = atlas if atlas is not None else knit_atlas(algebra, budget)
        self._obj: Dict[Key, TwoTermComplex] = {}
        self._hom: Dict[Tuple[int, int], object] = {}
        self._keep: Dict[int, TwoTermComplex] = {}
        self._shift: Dict[Tuple[Key, Key], int] = {}
        self._wct: Dict[Subcat, bool] = {}

    # -- objects and keys ------------------------------------------------

    def obj(self, key: Key) -> TwoTermComplex:
        if key not in self._obj:
            kind, i = key
            if kind == "mod":
                C = self.atlas.complex(i)
            else:
                C = TwoTermComplex.shifted_stalk(self.algebra, (self.algebra.vertices[i],))
            self._obj[key] = C
        return self._obj[key]

    def stalk_key(self, v) -> Key:
        return ("mod", self.atlas.projective_index(v))

    def shift_key(self, v) -> Key:
        return ("shift", self.algebra.quiver.vertex_index[v])

    def key_of(self, C: TwoTermComplex) -> Key:
        """Key of an indecomposable minimal complex."""
        if not C.p0:
            if len(C.p1) != 1:
                raise ModuleError("not indecomposable")
            return self.shift_key(C.p1[0])
        H = C.morphism()
        M, _ = cokernel(H)
        i = self.atlas.find(M)
        if i is None:
            if self.atlas.complete:
                raise ModuleError("module missing from a complete atlas")
            i = self.atlas.add(M)
        return ("mod", i)

    def keys_of(self, C: TwoTermComplex) -> List[Key]:
        """Keys of the indecomposable summands of ``C`` (with repetition)."""
        return sorted(self.key_of(D) for D in decompose_two_term(C))

    def all_keys(self) -> Subcat:
        """Every indecomposable two-term object (needs a complete atlas)."""
        if not self.atlas.complete:
            raise RefusalError("atlas is incomplete (knitting budget exhausted); exhaustive checks refused")
        return canon([("mod", i) for i in range(len(self.atlas))] + [("shift", k) for k in range(len(self.algebra.vertices))])

    def label(self, key: Key) -> str:
        kind, i = key
        if kind == "shift":
            return f"P{self.algebra.vertices[i]}[1]"
        M = self.atlas.modules[i]
        for v in self.algebra.vertices:
            if M.dims == self.algebra.projective_dim_vector(v) and i == self.atlas.projective_index(v):
                return f"P{v}"
        dims = M.dims
        body = "".join(map(str, dims)) if max(dims) < 10 else ",".join(map(str, dims))
        return f"M({body})"

    def labels(self, keys: Iterable[Key]) -> List[str]:
        return [self.label(k) for k in keys]

    # -- Homs ------------------------------------------------------------

    def hom(self, C: TwoTermComplex, D: TwoTermComplex):
        """``Hom_K(C, D)``, cached on object identity."""
        k = (id(C), id(D))
        if k not in self._hom:
            self._keep[id(C)] = C
            self._keep[id(D)] = D
            self._hom[k] = hom_k(C, D)
        return self._hom[k]

    def shift_dim(self, a: Key, b: Key) -> int:
        """``dim Hom_K(a, b[1])``, cross-checked against the module-side count."""
        k = (a, b)
        if k not in self._shift:
            A, B = self.obj(a), self.obj(b)
            d = hom_k_shift1(A, B).dim
            H = self.atlas.modules[b[1]] if b[0] == "mod" else None
            m = module_shift_obstruction(A, H) if H is not None else 0
            if d != m:
                raise RigidityDisagreement(f"Hom_K({self.label(a)}, {self.label(b)}[1]) = {d} but module count = {m}")
            self._shift[k] = d
        return self._shift[k]

    def is_rigid(self, X: Iterable[Key]) -> bool:
        X = list(X)
        return all(self.shift_dim(a, b) == 0 for a in X for b in X)

    def compatible(self, a: Key, X: Iterable[Key]) -> bool:
        return self.shift_dim(a, a) == 0 and all(self.shift_dim(a, b) == 0 and self.shift_dim(b, a) == 0 for b in X)

    # -- translation to the module side ---------------------------------

    def to_pair(self, X: Iterable[Key]) -> TauPair:
        X = list(X)
        return TauPair.make(
            self.atlas,
            [i for kind, i in X if kind == "mod"],
            [self.algebra.vertices[i] for kind, i in X if kind == "shift"],
        )

    def from_pair(self, pair: TauPair) -> Subcat:
        return canon([("mod", i) for i in pair.modules] + [self.shift_key(v) for v in pair.e_vertices])

    def e_part(self, X: Iterable[Key]) -> Tuple:
        return tuple(self.algebra.vertices[i] for kind, i in sorted(X) if kind == "shift")

    # -- approximations -------------------------------------------------

    def left_approx(self, A: TwoTermComplex, X: Sequence[Key]):
        return left_approx_tt(A, [self.obj(k) for k in X], hom=self.hom)

    def right_approx(self, A: TwoTermComplex, X: Sequence[Key]):
        return right_approx_tt(A, [self.obj(k) for k in X], hom=self.hom)

    def stalk(self, v) -> TwoTermComplex:
        return self.obj(self.stalk_key(v))

    def shifted(self, v) -> TwoTermComplex:
        return self.obj(self.shift_key(v))


# ----------------------------------------------------------------------
# R(X), weak cluster tilting


def r_annihilator(wb: Workbench, X: Iterable[Key]) -> Tuple:
    """Vertices ``v`` with ``Hom_K((0 -> P_v), X) = 0``, i.e. ``H(X)`` vanishes at ``v``.

    Raises:
        NotRigidError: if ``X`` is not two-term rigid.
    """
    X = canon(X)
    if not wb.is_rigid(X):
        raise NotRigidError("X is not two-term rigid")
    vi = wb.algebra.quiver.vertex_index
    out = tuple(v for v in wb.algebra.vertices if all(wb.atlas.modules[i].dims[vi[v]] == 0 for kind, i in X if kind == "mod"))
    if not set(wb.e_part(X)) <= set(out):
        raise AssertionError("e-part of a rigid X must lie in R(X)")
    return out


class ApproxTriangle(NamedTuple):
    """``P -> X1 -> X2 -> P[1]`` (left) or ``V -> X1 -> P[1]`` (right) for one vertex."""

    vertex: object
    approx: Tuple[Key, ...]
    third: Tuple[Key, ...]


def _approx_keys(X: Sequence[Key], summands: Sequence[int]) -> Tuple[Key, ...]:
    return tuple(sorted(X[j] for j in summands))


def _lem2_check(wb: Workbench, tri: ApproxTriangle) -> None:
    if set(tri.approx) & set(tri.third):
        names = wb.labels(sorted(set(tri.approx) & set(tri.third)))
        raise AssertionError(f"left minimal approximation target and cone share summands {names}")


def is_weak_cluster_tilting(wb: Workbench, X: Iterable[Key]) -> bool:
    """Two-term weak R[1]-cluster tilting test, run on both sides.

    The two-term test asks that every stalk ``(0 -> P)`` have a left
    add(X)-approximation whose cone lies in add X.  The module test is
    :func:`support_tau_tilting_test` on ``(H(X), e-part)``.

    Raises:
        RigidityDisagreement: if the two tests disagree.
    """
    X = canon(X)
    if X in wb._wct:
        return wb._wct[X]
    if not wb.is_rigid(X):
        wb._wct[X] = False
        return False
    two_term = True
    for v in wb.algebra.vertices:
        ap = wb.left_approx(wb.stalk(v), X)
        try:
            third = tuple(wb.keys_of(cone(ap.map)))
        except ConeError:
            two_term = False
            break
        if not set(third) <= set(X):
            two_term = False
            break
        _lem2_check(wb, ApproxTriangle(v, _approx_keys(X, ap.summands), third))
    module = support_tau_tilting_test(wb.atlas, wb.to_pair(X))
    if two_term != module:
        raise RigidityDisagreement(f"weak cluster tilting tests disagree on {wb.labels(X)}: two-term {two_term}, module {module}")
    wb._wct[X] = two_term
    return two_term


# ----------------------------------------------------------------------
# completions


class Side(NamedTuple):
    keys: Subcat
    triangles: Tuple[ApproxTriangle, ...]


def co_bongartz(wb: Workbench, X: Iterable[Key], check: bool = True) -> Side:
    """``M_X``: X together with the cones of left X-approximations of the stalks."""
    X = canon(X)
    if not wb.is_rigid(X):
        raise NotRigidError("X is not two-term rigid")
    keys = set(X)
    tris = []
    for v in wb.algebra.vertices:
        ap = wb.left_approx(wb.stalk(v), X)
        third = tuple(wb.keys_of(cone(ap.map)))
        tri = ApproxTriangle(v, _approx_keys(X, ap.summands), third)
        _lem2_check(wb, tri)
        tris.append(tri)
        keys.update(third)
    M = canon(keys)
    if check:
        if not is_weak_cluster_tilting(wb, M):
            raise AssertionError(f"M_X = {wb.labels(M)} is not weak cluster tilting")
        if r_annihilator(wb, M) != r_annihilator(wb, X):
            raise AssertionError("R(M_X) differs from R(X)")
    return Side(M, tuple(tris))


def bongartz(wb: Workbench, X: Iterable[Key], check: bool = True) -> Side:
    """``N_X``: X together with the cocones of right X-approximations of the ``P[1]``."""
    X = canon(X)
    if not wb.is_rigid(X):
        raise NotRigidError("X is not two-term rigid")
    keys = set(X)
    tris = []
    for v in wb.algebra.vertices:
        ap = wb.right_approx(wb.shifted(v), X)
        third = tuple(wb.keys_of(cocone(ap.map)))
        tris.append(ApproxTriangle(v, _approx_keys(X, ap.summands), third))
        keys.update(third)
    N = canon(keys)
    if check:
        if not is_weak_cluster_tilting(wb, N):
            raise AssertionError(f"N_X = {wb.labels(N)} is not weak cluster tilting")
        if wb.e_part(N) != wb.e_part(X):
            raise AssertionError("e-part of N_X differs from that of X")
    return Side(N, tuple(tris))


class CompletionResult(NamedTuple):
    """Both completions of ``X`` and the outcome of every check.

    Attributes:
        x: The subcategory.
        m_x: Co-Bongartz completion.
        n_x: Bongartz completion.
        m_triangles: Per-vertex triangles used for ``M_X``.
        n_triangles: Per-vertex triangles used for ``N_X``.
        almost_complete: Whether a single indecomposable completes ``X``.
        found: Completions found by the exhaustive complement search.
        checks: Named boolean checks; all must hold.
    """

    x: Subcat
    m_x: Subcat
    n_x: Subcat
    m_triangles: Tuple[ApproxTriangle, ...]
    n_triangles: Tuple[ApproxTriangle, ...]
    almost_complete: bool
    found: Tuple[Subcat, ...]
    checks: Dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def complements(wb: Workbench, X: Iterable[Key]) -> List[Key]:
    """Indecomposables ``W ∉ X`` with ``add(X ∪ {W})`` weak cluster tilting."""
    X = canon(X)
    out = []
    for W in wb.all_keys():
        if W in X or not wb.compatible(W, X):
            continue
        if is_weak_cluster_tilting(wb, X + (W,)):
            out.append(W)
    return out


def completions(wb: Workbench, X: Iterable[Key], exhaustive: bool = True) -> CompletionResult:
    """``M_X`` and ``N_X`` with the intersection, containment and uniqueness checks.

    Args:
        wb: Workbench.
        X: A two-term rigid subcategory that is not weak cluster tilting.
        exhaustive: Search all complements (needs a complete atlas).

    Raises:
        AlreadyCompleteError: if ``X`` is already weak cluster tilting.
        NotRigidError: if ``X`` is not rigid.
    """
    X = canon(X)
    if not wb.is_rigid(X):
        raise NotRigidError("X is not two-term rigid")
    if is_weak_cluster_tilting(wb, X):
        raise AlreadyCompleteError("X is weak cluster tilting; nothing to complete")
    M = co_bongartz(wb, X)
    N = bongartz(wb, X)
    checks = {
        "X in M_X": set(X) <= set(M.keys),
        "X in N_X": set(X) <= set(N.keys),
        "M_X meet N_X = X": set(M.keys) & set(N.keys) == set(X),
        "M_X != N_X": M.keys != N.keys,
    }
    found: Tuple[Subcat, ...] = ()
    almost = False
    if exhaustive:
        found = tuple(sorted(canon(X + (W,)) for W in complements(wb, X)))
        almost = bool(found)
        if almost:
            checks["exactly two completions"] = set(found) == {M.keys, N.keys} and len(found) == 2
    return CompletionResult(X, M.keys, N.keys, M.triangles, N.triangles, almost, found, checks)


# ----------------------------------------------------------------------
# mutation pairs


class MutationTriangle(NamedTuple):
    """``Z -> X' -> Y -> Z[1]`` with the data certifying it.

    ``side`` is ``"M"`` when built from ``Y`` in M (right approximation of
    ``Y``) and ``"N"`` when built from ``Z`` in N (left approximation of
    ``Z``).  ``connecting_h0`` is the dimension of ``H`` of the unreduced
    cone ``Z[1]``; it vanishes exactly when ``H`` kills the connecting map.
    """

    side: str
    z: Tuple[Key, ...]
    x: Tuple[Key, ...]
    y: Tuple[Key, ...]
    connecting_h0: int
    ok: bool


class MutationCertificate(NamedTuple):
    x: Subcat
    m: Subcat
    n: Subcat
    triangles: Tuple[MutationTriangle, ...]
    checks: Dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values()) and all(t.ok for t in self.triangles)


def verify_mutation_pair(wb: Workbench, X: Iterable[Key], M: Iterable[Key], N: Iterable[Key]) -> MutationCertificate:
    """Build and check the triangles making ``(M, N)`` an X-mutation pair.

    For ``Y`` in ``M`` outside ``X`` the triangle comes from the minimal right
    X-approximation ``x: X' -> Y``.  Its cocone ``Z`` must be two-term and lie
    in ``N``, and the connecting map ``Y -> Z[1]`` must vanish under ``H``.
    In the model, a map between two-term objects factors through an object of
    R[1] exactly when ``H`` kills it; since ``H(Z[1])`` is the cokernel of
    ``H(x)``, the condition is that ``H(x)`` is onto.  Objects of ``N``
    are treated dually with minimal left approximations.  Finally ``M`` and
    ``N`` are compared with ``M_X`` and ``N_X``.
    """
    X, M, N = canon(X), canon(M), canon(N)
    tris = []
    for y in M:
        if y in X:
            continue
        Y = wb.obj(y)
        ap = wb.right_approx(Y, X)
        h0 = cone_h0_dim(ap.map)
        try:
            z = tuple(wb.keys_of(cocone(ap.map)))
        except ConeError:
            tris.append(MutationTriangle("M", (), _approx_keys(X, ap.summands), (y,), h0, False))
            continue
        ok = h0 == 0 and set(z) <= set(N) and len(z) == 1 and z[0] not in X
        tris.append(MutationTriangle("M", z, _approx_keys(X, ap.summands), (y,), h0, ok))
    for z in N:
        if z in X:
            continue
        Z = wb.obj(z)
        ap = wb.left_approx(Z, X)
        try:
            y = tuple(wb.keys_of(cone(ap.map)))
        except ConeError:
            tris.append(MutationTriangle("N", (z,), _approx_keys(X, ap.summands), (), -1, False))
            continue
        # H(Z[1]) is zero for two-term Z, so the connecting map Y -> Z[1] is killed by H
        ok = set(y) <= set(M) and len(y) == 1 and y[0] not in X
        tris.append(MutationTriangle("N", (z,), _approx_keys(X, ap.summands), y, 0, ok))
    checks = {
        "M = M_X": co_bongartz(wb, X, check=False).keys == M,
        "N = N_X": bongartz(wb, X, check=False).keys == N,
    }
    return MutationCertificate(X, M, N, tuple(tris), checks)


# ----------------------------------------------------------------------
# exchange graph


class ExchangeGraph(NamedTuple):
    """Weak cluster tilting subcategories linked by single exchanges.

    ``edges`` holds ``(m, n, x)``: vertex indices of ``M_X`` and ``N_X`` for
    the almost complete ``x``.
    """

    vertices: Tuple[Subcat, ...]
    edges: Tuple[Tuple[int, int, Subcat], ...]
    complete: bool


def mutate(wb: Workbench, U: Iterable[Key], w: Key) -> Tuple[Subcat, str]:
    """Exchange ``w`` in the weak cluster tilting ``U``.

    Returns:
        The other completion of ``U \\ {w}`` and ``"N"`` when it is the
        Bongartz completion, ``"M"`` otherwise.
    """
    U = canon(U)
    X = tuple(k for k in U if k != w)
    M = co_bongartz(wb, X, check=False).keys
    N = bongartz(wb, X, check=False).keys
    if U == M:
        return N, "N"
    if U == N:
        return M, "M"
    raise AssertionError(f"{wb.labels(U)} is neither completion of its almost complete part")


def exchange_graph(wb: Workbench, budget: int = 500) -> ExchangeGraph:
    """Mutation closure starting from ``add A``.

    Args:
        wb: Workbench.
        budget: Maximum number of vertices.
    """
    start = canon(wb.stalk_key(v) for v in wb.algebra.vertices)
    seen = {start: 0}
    order = [start]
    edges = {}
    queue = deque([start])
    complete = True
    while queue:
        U = queue.popleft()
        for w in U:
            V, kind = mutate(wb, U, w)
            if V not in seen:
                if len(order) >= budget:
                    complete = False
                    continue
                seen[V] = len(order)
                order.append(V)
                queue.append(V)
            X = tuple(k for k in U if k != w)
            m, n = (seen[U], seen[V]) if kind == "N" else (seen[V], seen[U])
            edges[X] = (m, n, X)
    # renumber vertices canonically
    verts = sorted(order)
    index = {U: i for i, U in enumerate(verts)}
    out_edges = sorted((index[order[m]], index[order[n]], X) for m, n, X in edges.values())
    return ExchangeGraph(tuple(verts), tuple(out_edges), complete)
