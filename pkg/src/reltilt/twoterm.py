"""Two-term complexes of projectives and their homotopy category.

A two-term complex ``P1 --d--> P0`` sits in degrees -1 and 0.  The stalk
``(0 -> P)`` is an object of R = add A and ``(P -> 0)`` is its shift
``P[1]``.  Morphisms between projectives are stored as arrays of algebra
elements: an array ``d`` of shape ``(len(tgt), len(src), dim A)`` whose entry
``d[j, i]`` lies in ``e_{tgt_j} A e_{src_i}`` and acts by left
multiplication.  Composition ``G ∘ F`` is the algebra product
``G[k, j] · F[j, i]`` summed over ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from . import field as F
from .algebra import BoundQuiverAlgebra
from .modules import (
    Representation,
    RepHom,
    cokernel,
    decompose,
    isomorphic_indecomposables,
    minimal_projective_presentation,
    projective_morphism,
)


class ConeError(ValueError):
    """Raised when a mapping cone does not reduce to a two-term complex."""


class RigidityDisagreement(AssertionError):
    """The homotopy test and the module-side test disagreed (a bug)."""


# ----------------------------------------------------------------------
# arrays of algebra elements


def _empty(alg: BoundQuiverAlgebra, rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols, alg.dim), dtype=np.int64)


def pm_compose(alg: BoundQuiverAlgebra, G: np.ndarray, Fm: np.ndarray) -> np.ndarray:
    """Composite ``G ∘ F`` of projective morphisms (``F`` applied first)."""
    p = alg.p
    k, j, n = G.shape
    j2, i, _ = Fm.shape
    if j != j2:
        raise ValueError(f"cannot compose: inner sizes {j} and {j2}")
    if k == 0 or i == 0 or j == 0:
        return _empty(alg, k, i)
    # step 1: GT[k, j, y, z] = sum_x G[k, j, x] table[x, y, z]
    GT = np.einsum("kjx,xyz->kjyz", G, alg.table) % p
    return np.einsum("kjyz,jiy->kiz", GT, Fm) % p


def _positions(alg: BoundQuiverAlgebra, src: Sequence, tgt: Sequence) -> np.ndarray:
    """Flat indices of the allowed entries of a map ``⊕P_src -> ⊕P_tgt``."""
    n = alg.dim
    out = [(j * len(src) + i) * n + b for j, t in enumerate(tgt) for i, s in enumerate(src) for b in alg.paths_between(t, s)]
    return np.array(out, dtype=np.int64)


def _from_coords(alg: BoundQuiverAlgebra, src: Sequence, tgt: Sequence, coords: np.ndarray) -> np.ndarray:
    arr = np.zeros(len(tgt) * len(src) * alg.dim, dtype=np.int64)
    arr[_positions(alg, src, tgt)] = coords
    return arr.reshape(len(tgt), len(src), alg.dim)


def _right_comp_matrix(alg: BoundQuiverAlgebra, d: np.ndarray, rows: int) -> np.ndarray:
    """Matrix of ``f ↦ f ∘ d`` on flattened ``f`` of shape ``(rows, b, n)``."""
    b, c, n = d.shape
    W = np.einsum("jiy,xyz->jxiz", d, alg.table) % alg.p
    M = np.einsum("kl,jxiz->kjxliz", np.eye(rows, dtype=np.int64), W)
    return M.reshape(rows * b * n, rows * c * n)


def _left_comp_matrix(alg: BoundQuiverAlgebra, d: np.ndarray, cols: int) -> np.ndarray:
    """Matrix of ``g ↦ d ∘ g`` on flattened ``g`` of shape ``(e, cols, n)``."""
    a, e, n = d.shape
    V = np.einsum("kjx,xyz->jykz", d, alg.table) % alg.p
    M = np.einsum("jykz,il->jiyklz", V, np.eye(cols, dtype=np.int64))
    return M.reshape(e * cols * n, a * cols * n)


def unit_inverse(alg: BoundQuiverAlgebra, u: np.ndarray, v) -> np.ndarray:
    """Inverse of a unit ``u`` of the local algebra ``e_v A e_v``."""
    p = alg.p
    e = alg.idempotent[v]
    c0 = int(u[e]) % p
    if c0 == 0:
        raise ValueError("element is not a unit")
    ci = F.inv_scalar(c0, p)
    nil = (-ci * (u - c0 * alg.basis_element(e))) % p
    term = alg.basis_element(e)
    total = term.copy()
    for _ in range(alg.dim + 1):
        term = alg.multiply(term, nil)
        if not np.any(term):
            break
        total = (total + term) % p
    return (ci * total) % p


def _find_unit(alg: BoundQuiverAlgebra, src: Sequence, tgt: Sequence, d: np.ndarray) -> Optional[Tuple[int, int]]:
    for j, t in enumerate(tgt):
        for i, s in enumerate(src):
            if s == t and d[j, i, alg.idempotent[s]] % alg.p:
                return j, i
    return None


def reduce_complex(alg: BoundQuiverAlgebra, terms: List[Tuple], diffs: List[np.ndarray]) -> Tuple[List[Tuple], List[np.ndarray]]:
    """Cancel every contractible ``P --unit--> P`` block by Gaussian elimination.

    Args:
        alg: The algebra.
        terms: Vertex tuples ``T_0, ..., T_m`` in increasing degree.
        diffs: ``diffs[k]`` maps ``T_k -> T_{k+1}`` (shape
            ``(len T_{k+1}, len T_k, dim A)``).

    Returns:
        A homotopy equivalent complex whose differentials have no unit entry,
        i.e. take values in the radical.
    """
    terms = [tuple(t) for t in terms]
    diffs = [np.array(d, dtype=np.int64) % alg.p for d in diffs]
    while True:
        hit = None
        for k, d in enumerate(diffs):
            found = _find_unit(alg, terms[k], terms[k + 1], d)
            if found is not None:
                hit = (k, found)
                break
        if hit is None:
            return terms, diffs
        k, (j0, i0) = hit
        d = diffs[k]
        v = terms[k][i0]
        uinv = unit_inverse(alg, d[j0, i0], v).reshape(1, 1, -1)
        keep_rows = [j for j in range(d.shape[0]) if j != j0]
        keep_cols = [i for i in range(d.shape[1]) if i != i0]
        a = d[keep_rows][:, [i0]]
        b = d[[j0]][:, keep_cols]
        corr = pm_compose(alg, pm_compose(alg, a, uinv), b)
        diffs[k] = (d[keep_rows][:, keep_cols] - corr) % alg.p
        if k > 0:
            diffs[k - 1] = diffs[k - 1][keep_cols]
        if k + 1 < len(diffs):
            diffs[k + 1] = diffs[k + 1][:, keep_rows]
        terms[k] = tuple(terms[k][i] for i in keep_cols)
        terms[k + 1] = tuple(terms[k + 1][j] for j in keep_rows)


# ----------------------------------------------------------------------
# complexes and chain maps


@dataclass(frozen=True, eq=False)
class TwoTermComplex:
    """A complex ``⊕P_{p1} --d--> ⊕P_{p0}`` in degrees -1, 0.

    Attributes:
        algebra: The algebra.
        p1: Vertices of the degree -1 summands.
        p0: Vertices of the degree 0 summands.
        d: Differential as an array of algebra elements, shape
            ``(len(p0), len(p1), dim A)``.
    """

    algebra: BoundQuiverAlgebra
    p1: Tuple
    p0: Tuple
    d: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p1", tuple(self.p1))
        object.__setattr__(self, "p0", tuple(self.p0))
        d = np.asarray(self.d, dtype=np.int64).reshape(len(self.p0), len(self.p1), self.algebra.dim) % self.algebra.p
        mask = np.zeros(d.size, dtype=bool)
        mask[_positions(self.algebra, self.p1, self.p0)] = True
        if np.any(d.reshape(-1)[~mask]):
            raise ValueError("differential entry is not in e_t A e_s")
        object.__setattr__(self, "d", d)

    @classmethod
    def stalk(cls, alg: BoundQuiverAlgebra, vertices: Sequence) -> "TwoTermComplex":
        """The object ``(0 -> ⊕P_v)`` of R."""
        return cls(alg, (), tuple(vertices), _empty(alg, len(vertices), 0))

    @classmethod
    def shifted_stalk(cls, alg: BoundQuiverAlgebra, vertices: Sequence) -> "TwoTermComplex":
        """The object ``(⊕P_v -> 0)`` of R[1]."""
        return cls(alg, tuple(vertices), (), _empty(alg, 0, len(vertices)))

    @classmethod
    def zero(cls, alg: BoundQuiverAlgebra) -> "TwoTermComplex":
        return cls(alg, (), (), _empty(alg, 0, 0))

    @classmethod
    def from_module(cls, M: Representation) -> "TwoTermComplex":
        """The minimal projective presentation of ``M``."""
        if M.is_zero():
            return cls.zero(M.algebra)
        pres = minimal_projective_presentation(M)
        return cls(M.algebra, pres.p1, pres.p0, pres.d)

    @property
    def p(self) -> int:
        return self.algebra.p

    def is_zero(self) -> bool:
        return not self.p1 and not self.p0

    def is_minimal(self) -> bool:
        return _find_unit(self.algebra, self.p1, self.p0, self.d) is None

    def morphism(self):
        """The differential as a module map ``P1 -> P0``."""
        return projective_morphism(self.algebra, self.p1, self.p0, self.d)

    def minimal(self) -> "TwoTermComplex":
        return minimal_form(self)

    def __repr__(self) -> str:
        rows = []
        for j in range(len(self.p0)):
            rows.append("[" + ", ".join(self.algebra.format_element(self.d[j, i]) for i in range(len(self.p1))) + "]")
        return f"TwoTermComplex(P{list(self.p1)} -> P{list(self.p0)}, d=[{'; '.join(rows)}])"


def minimal_form(C: TwoTermComplex) -> TwoTermComplex:
    """Homotopy equivalent minimal complex (no unit entry in ``d``)."""
    terms, diffs = reduce_complex(C.algebra, [C.p1, C.p0], [C.d])
    return TwoTermComplex(C.algebra, terms[0], terms[1], diffs[0])


def direct_sum_tt(parts: Sequence[TwoTermComplex], alg: Optional[BoundQuiverAlgebra] = None) -> TwoTermComplex:
    """Direct sum, with summands in the given order."""
    if not parts:
        if alg is None:
            raise ValueError("empty direct sum needs the algebra")
        return TwoTermComplex.zero(alg)
    alg = parts[0].algebra
    p1 = tuple(v for C in parts for v in C.p1)
    p0 = tuple(v for C in parts for v in C.p0)
    d = _empty(alg, len(p0), len(p1))
    r = c = 0
    for C in parts:
        d[r : r + len(C.p0), c : c + len(C.p1)] = C.d
        r += len(C.p0)
        c += len(C.p1)
    return TwoTermComplex(alg, p1, p0, d)


@dataclass(frozen=True, eq=False)
class ChainMap:
    """A chain map ``(f1, f0)`` between two-term complexes."""

    source: TwoTermComplex
    target: TwoTermComplex
    f1: np.ndarray
    f0: np.ndarray

    @property
    def algebra(self) -> BoundQuiverAlgebra:
        return self.source.algebra

    def defect(self) -> np.ndarray:
        """``f0 ∘ d_source - d_target ∘ f1`` (zero for a chain map)."""
        alg = self.algebra
        return (pm_compose(alg, self.f0, self.source.d) - pm_compose(alg, self.target.d, self.f1)) % alg.p

    def is_chain_map(self) -> bool:
        return not np.any(self.defect())

    def then(self, other: "ChainMap") -> "ChainMap":
        """Composite with ``self`` applied first."""
        alg = self.algebra
        return ChainMap(self.source, other.target, pm_compose(alg, other.f1, self.f1), pm_compose(alg, other.f0, self.f0))

    def __add__(self, other: "ChainMap") -> "ChainMap":
        p = self.algebra.p
        return ChainMap(self.source, self.target, (self.f1 + other.f1) % p, (self.f0 + other.f0) % p)

    def scale(self, c: int) -> "ChainMap":
        p = self.algebra.p
        return ChainMap(self.source, self.target, (c * self.f1) % p, (c * self.f0) % p)

    def coords(self) -> np.ndarray:
        alg = self.algebra
        S, T = self.source, self.target
        return np.concatenate(
            [self.f1.reshape(-1)[_positions(alg, S.p1, T.p1)], self.f0.reshape(-1)[_positions(alg, S.p0, T.p0)]]
        )

    def h0(self):
        """The induced module map ``H(source) -> H(target)`` on cokernels."""
        alg = self.algebra
        S, T = self.source, self.target
        HS, qs = h_module(S)
        HT, qt = h_module(T)
        f0 = projective_morphism(alg, S.p0, T.p0, self.f0)
        mats = [F.matmul(_section(qs.mats[k], alg.p), f0.mats[k], qt.mats[k], p=alg.p) for k in range(len(alg.vertices))]
        return RepHom(HS, HT, mats)


def _section(q: np.ndarray, p: int) -> np.ndarray:
    """A right inverse ``s`` of a surjective matrix ``q`` (``s @ q = I``)."""
    rows, cols = q.shape
    if cols == 0:
        return F.zeros(0, rows)
    sol, _ = F.solve(q.T, F.identity(cols), p)
    return sol.T


def identity_map(C: TwoTermComplex) -> ChainMap:
    alg = C.algebra
    f1 = _empty(alg, len(C.p1), len(C.p1))
    for i, v in enumerate(C.p1):
        f1[i, i, alg.idempotent[v]] = 1
    f0 = _empty(alg, len(C.p0), len(C.p0))
    for i, v in enumerate(C.p0):
        f0[i, i, alg.idempotent[v]] = 1
    return ChainMap(C, C, f1, f0)


def zero_map(C: TwoTermComplex, D: TwoTermComplex) -> ChainMap:
    alg = C.algebra
    return ChainMap(C, D, _empty(alg, len(D.p1), len(C.p1)), _empty(alg, len(D.p0), len(C.p0)))


def map_into_sum(A: TwoTermComplex, target: TwoTermComplex, parts: Sequence[ChainMap]) -> ChainMap:
    """The map ``A -> ⊕ T_k`` with components ``parts`` (target given as the sum)."""
    alg = A.algebra
    f1 = np.concatenate([m.f1 for m in parts], axis=0) if parts else _empty(alg, 0, len(A.p1))
    f0 = np.concatenate([m.f0 for m in parts], axis=0) if parts else _empty(alg, 0, len(A.p0))
    return ChainMap(A, target, f1, f0)


def map_from_sum(source: TwoTermComplex, B: TwoTermComplex, parts: Sequence[ChainMap]) -> ChainMap:
    """The map ``⊕ S_k -> B`` with components ``parts``."""
    alg = B.algebra
    f1 = np.concatenate([m.f1 for m in parts], axis=1) if parts else _empty(alg, len(B.p1), 0)
    f0 = np.concatenate([m.f0 for m in parts], axis=1) if parts else _empty(alg, len(B.p0), 0)
    return ChainMap(source, B, f1, f0)


# ----------------------------------------------------------------------
# homotopy Hom spaces


class QuotientSpace:
    """A subquotient ``Z / B`` of a coordinate space, with representatives.

    Attributes:
        cycles: Rows spanning ``Z``.
        boundaries: Row basis of ``B ⊆ Z``.
        reps: Rows of ``Z`` whose classes form a basis of ``Z / B``.
    """

    def __init__(self, cycles: np.ndarray, boundaries: np.ndarray, p: int):
        self.p = p
        self.width = cycles.shape[1]
        self.boundaries = F.row_basis(F.as_rows(boundaries, self.width), p)
        self.reps = F.quotient_complement(cycles, self.boundaries, p)
        self.cycles = cycles
        self._frame = np.vstack([self.reps, self.boundaries])

    @property
    def dim(self) -> int:
        return self.reps.shape[0]

    def classify(self, vectors: np.ndarray) -> np.ndarray:
        """Coordinates of the classes of cycle ``vectors`` in the ``reps`` basis.

        Raises:
            ValueError: if some vector is not a cycle.
        """
        vectors = F.as_rows(np.atleast_2d(vectors), self.width)
        if vectors.shape[0] == 0:
            return F.zeros(0, self.dim)
        if self._frame.shape[0] == 0:
            if np.any(vectors % self.p):
                raise ValueError("vector outside the cycle space")
            return F.zeros(vectors.shape[0], 0)
        c = F.express(self._frame, vectors, self.p)
        if c is None:
            raise ValueError("vector outside the cycle space")
        return c[:, : self.dim]

    def is_zero(self, vector: np.ndarray) -> bool:
        return not np.any(self.classify(vector))


class HomotopyHom(NamedTuple):
    """``Hom_K(C, D)``: chain maps modulo null-homotopic ones."""

    source: TwoTermComplex
    target: TwoTermComplex
    space: QuotientSpace
    reps: List[ChainMap]

    @property
    def dim(self) -> int:
        return len(self.reps)

    def classify(self, maps: Sequence[ChainMap]) -> np.ndarray:
        if not maps:
            return F.zeros(0, self.dim)
        return self.space.classify(np.array([m.coords() for m in maps], dtype=np.int64))

    def is_null(self, m: ChainMap) -> bool:
        return self.space.is_zero(m.coords())


class ShiftHom(NamedTuple):
    """``Hom_K(C, D[1])`` with representatives ``g: P1^C -> P0^D``."""

    source: TwoTermComplex
    target: TwoTermComplex
    space: QuotientSpace
    reps: List[np.ndarray]

    @property
    def dim(self) -> int:
        return len(self.reps)


def hom_k(C: TwoTermComplex, D: TwoTermComplex) -> HomotopyHom:
    """Homotopy classes of chain maps ``C -> D``.

    Args:
        C: Source complex.
        D: Target complex.

    Returns:
        A :class:`HomotopyHom` whose ``reps`` are honest chain maps.
    """
    alg = C.algebra
    p = alg.p
    pos1 = _positions(alg, C.p1, D.p1)
    pos0 = _positions(alg, C.p0, D.p0)
    posh = _positions(alg, C.p0, D.p1)
    posm = _positions(alg, C.p1, D.p0)
    n1, n0 = len(pos1), len(pos0)
    # cycle condition f0∘dC - dD∘f1 = 0 in Hom(P1^C, P0^D)
    R0 = _right_comp_matrix(alg, C.d, len(D.p0))[np.ix_(pos0, posm)]
    L1 = _left_comp_matrix(alg, D.d, len(C.p1))[np.ix_(pos1, posm)]
    system = np.vstack([(-L1) % p, R0]) if n1 + n0 else F.zeros(0, len(posm))
    width = n1 + n0
    if width == 0:
        cycles = F.zeros(0, 0)
    elif system.shape[1] == 0:
        cycles = F.identity(width)
    else:
        cycles = F.left_nullspace(system, p)
    # null-homotopic maps (h∘dC, dD∘h) for h: P0^C -> P1^D
    if len(posh):
        Bh1 = _right_comp_matrix(alg, C.d, len(D.p1))[np.ix_(posh, pos1)]
        Bh0 = _left_comp_matrix(alg, D.d, len(C.p0))[np.ix_(posh, pos0)]
        bounds = np.hstack([Bh1, Bh0]) % p
    else:
        bounds = F.zeros(0, width)
    space = QuotientSpace(F.as_rows(cycles, width), bounds, p)
    reps = []
    for row in space.reps:
        f1 = _from_coords(alg, C.p1, D.p1, row[:n1])
        f0 = _from_coords(alg, C.p0, D.p0, row[n1:])
        reps.append(ChainMap(C, D, f1, f0))
    return HomotopyHom(C, D, space, reps)


def hom_k_shift1(C: TwoTermComplex, D: TwoTermComplex) -> ShiftHom:
    """``Hom_K(C, D[1]) = Hom(P1^C, P0^D) / (Hom(P0^C,P0^D)∘d_C + d_D∘Hom(P1^C,P1^D))``."""
    alg = C.algebra
    p = alg.p
    posm = _positions(alg, C.p1, D.p0)
    pos0 = _positions(alg, C.p0, D.p0)
    pos1 = _positions(alg, C.p1, D.p1)
    width = len(posm)
    parts = []
    if len(pos0):
        parts.append(_right_comp_matrix(alg, C.d, len(D.p0))[np.ix_(pos0, posm)])
    if len(pos1):
        parts.append(_left_comp_matrix(alg, D.d, len(C.p1))[np.ix_(pos1, posm)])
    bounds = np.vstack(parts) % p if parts else F.zeros(0, width)
    space = QuotientSpace(F.identity(width), bounds, p)
    reps = [_from_coords(alg, C.p1, D.p0, row) for row in space.reps]
    return ShiftHom(C, D, space, reps)


# ----------------------------------------------------------------------
# cones


def _cone_terms(f: ChainMap):
    alg = f.algebra
    C, D = f.source, f.target
    terms = [C.p1, C.p0 + D.p1, D.p0]
    d0 = np.concatenate([(-C.d) % alg.p, f.f1], axis=0)
    d1 = np.concatenate([f.f0, D.d], axis=1)
    return terms, [d0, d1]


def cone_h0_dim(f: ChainMap) -> int:
    """Dimension of the degree-0 cohomology of the (unreduced) cone of ``f``.

    It equals the dimension of the cokernel of ``H(f)``.
    """
    terms, diffs = _cone_terms(f)
    g = projective_morphism(f.algebra, terms[1], terms[2], diffs[1])
    Q, _ = cokernel(g)
    return Q.total_dim


def cone(f: ChainMap) -> TwoTermComplex:
    """Reduced mapping cone of ``f``, required to live in degrees -1, 0.

    The cone differential is ``[[-d_C, 0], [f, d_D]]``.

    Raises:
        ConeError: if a degree -2 term survives reduction.
    """
    alg = f.algebra
    terms, diffs = reduce_complex(alg, *_cone_terms(f))
    if terms[0]:
        raise ConeError("cone not two-term after reduction")
    return TwoTermComplex(alg, terms[1], terms[2], diffs[1])


def cocone(f: ChainMap) -> TwoTermComplex:
    """Reduced ``cone(f)[-1]``, required to live in degrees -1, 0.

    Raises:
        ConeError: if a degree 0 term of the cone survives reduction.
    """
    alg = f.algebra
    terms, diffs = reduce_complex(alg, *_cone_terms(f))
    if terms[2]:
        raise ConeError("cone not two-term after reduction")
    return TwoTermComplex(alg, terms[0], terms[1], diffs[0])


# ----------------------------------------------------------------------
# the functor H and decompositions


def h_module(C: TwoTermComplex):
    """``H(C) = coker d`` with the quotient map ``P0 -> H(C)``."""
    return cokernel(C.morphism())


def h_functor(C: TwoTermComplex) -> Tuple[Representation, Tuple]:
    """Module part and e-part of a two-term complex.

    Returns:
        ``(H(C), e_part)`` where ``e_part`` lists (with repetition) the
        vertices ``v`` such that ``P_v[1]`` is a summand of ``C``.
    """
    C = minimal_form(C)
    H, _ = h_module(C)
    if H.is_zero():
        return H, tuple(sorted(C.p1, key=C.algebra.quiver.vertex_index.__getitem__))
    pres = minimal_projective_presentation(H)
    rest = list(C.p1)
    for v in pres.p1:
        rest.remove(v)
    return H, tuple(sorted(rest, key=C.algebra.quiver.vertex_index.__getitem__))


def decompose_two_term(C: TwoTermComplex) -> List[TwoTermComplex]:
    """Indecomposable summands of ``C``, each in minimal form.

    A minimal complex is the minimal presentation of ``H(C)`` plus the
    stalks of its e-part, so the summands come from decomposing ``H(C)``.
    """
    alg = C.algebra
    H, e = h_functor(C)
    out: List[TwoTermComplex] = []
    if not H.is_zero():
        for s in decompose(H):
            out.extend([TwoTermComplex.from_module(s.module)] * s.multiplicity)
    out.extend(TwoTermComplex.shifted_stalk(alg, (v,)) for v in e)
    return out


def same_indecomposable(C: TwoTermComplex, D: TwoTermComplex) -> bool:
    """Isomorphism test for indecomposable minimal complexes."""
    if not C.p0 and not D.p0:
        return C.p1 == D.p1
    if not C.p0 or not D.p0:
        return False
    HC, _ = h_module(C)
    HD, _ = h_module(D)
    return HC.dims == HD.dims and isomorphic_indecomposables(HC, HD)


# ----------------------------------------------------------------------
# rigidity


def module_shift_obstruction(U: TwoTermComplex, N: Representation) -> int:
    """``dim coker(Hom(P0^U, N) -> Hom(P1^U, N))`` induced by ``d_U``.

    ``Hom(P_v, N)`` is identified with ``N_v``; the map sends ``(n_j)`` to
    ``(Σ_j n_j · d[j, i])_i``.
    """
    alg = U.algebra
    p = alg.p
    vi = alg.quiver.vertex_index
    rows_dim = [N.dims[vi[v]] for v in U.p0]
    cols_dim = [N.dims[vi[v]] for v in U.p1]
    total_cols = sum(cols_dim)
    if total_cols == 0:
        return 0
    M = F.zeros(sum(rows_dim), total_cols)
    r = 0
    for j, t in enumerate(U.p0):
        c = 0
        for i, s in enumerate(U.p1):
            block = F.zeros(rows_dim[j], cols_dim[i])
            for b in np.nonzero(U.d[j, i])[0]:
                block = (block + int(U.d[j, i, b]) * N.path_matrix(int(b))) % p
            M[r : r + rows_dim[j], c : c + cols_dim[i]] = block
            c += cols_dim[i]
        r += rows_dim[j]
    return total_cols - (F.rank(M, p) if M.shape[0] else 0)


class RigidityReport(NamedTuple):
    rigid: bool
    witness: Optional[Tuple[int, int]]
    dims: dict


def is_two_term_rigid(S: Sequence[TwoTermComplex]) -> RigidityReport:
    """Whether ``Hom_K(U, U'[1]) = 0`` for all ``U, U'`` in ``S``.

    Every pair is tested twice: in the homotopy category and through the
    cokernel of ``Hom(d_U, H(U'))``.  The two numbers must coincide.

    Raises:
        RigidityDisagreement: if the two computations differ.
    """
    dims = {}
    witness = None
    Hs = [h_module(U)[0] for U in S]
    for a, U in enumerate(S):
        for b, V in enumerate(S):
            k = hom_k_shift1(U, V).dim
            m = module_shift_obstruction(U, Hs[b])
            if k != m:
                raise RigidityDisagreement(f"Hom_K shift dimension {k} != module obstruction {m} for pair ({a}, {b})")
            dims[(a, b)] = k
            if k and witness is None:
                witness = (a, b)
    return RigidityReport(witness is None, witness, dims)


# ----------------------------------------------------------------------
# approximations


class TTApproximation(NamedTuple):
    """Approximation ``A -> T`` (left) or ``T -> A`` (right) with ``T = ⊕ S_k``."""

    summands: Tuple[int, ...]
    obj: TwoTermComplex
    map: ChainMap


def _minimize(comps, inner, targets, compose) -> List[int]:
    """Drop components while the remaining ones still span every target space."""

    def works(sel):
        for j, space in targets.items():
            maps = [compose(comps[k][1], g) for k in sel for g in inner[(comps[k][0], j)]]
            got = F.rank(space.classify(maps), space.space.p) if maps and space.dim else 0
            if got != space.dim:
                return False
        return True

    sel = list(range(len(comps)))
    for k in reversed(range(len(comps))):
        trial = [s for s in sel if s != k]
        if works(trial):
            sel = trial
    return sel


def left_approx_tt(A: TwoTermComplex, S: Sequence[TwoTermComplex], hom=hom_k) -> TTApproximation:
    """Minimal left add(S)-approximation of ``A`` in the homotopy category.

    Args:
        A: Object to approximate.
        S: Indecomposable minimal complexes spanning the class.
        hom: Function computing ``Hom_K``; callers pass a cached variant.
    """
    alg = A.algebra
    targets = {j: hom(A, X) for j, X in enumerate(S)}
    comps = [(j, m) for j in range(len(S)) for m in targets[j].reps]
    inner = {(i, j): hom(S[i], S[j]).reps for i in range(len(S)) for j in range(len(S))}
    sel = _minimize(comps, inner, targets, lambda m, g: m.then(g))
    parts = [comps[k] for k in sel]
    T = direct_sum_tt([S[j] for j, _ in parts], alg)
    return TTApproximation(tuple(j for j, _ in parts), T, map_into_sum(A, T, [m for _, m in parts]))


def right_approx_tt(A: TwoTermComplex, S: Sequence[TwoTermComplex], hom=hom_k) -> TTApproximation:
    """Minimal right add(S)-approximation of ``A`` in the homotopy category."""
    alg = A.algebra
    targets = {j: hom(X, A) for j, X in enumerate(S)}
    comps = [(j, m) for j in range(len(S)) for m in targets[j].reps]
    inner = {(i, j): hom(S[j], S[i]).reps for i in range(len(S)) for j in range(len(S))}
    sel = _minimize(comps, inner, targets, lambda m, g: g.then(m))
    parts = [comps[k] for k in sel]
    T = direct_sum_tt([S[j] for j, _ in parts], alg)
    return TTApproximation(tuple(j for j, _ in parts), T, map_from_sum(T, A, [m for _, m in parts]))
