"""Finite-dimensional right modules over a bound quiver algebra.

A :class:`Representation` stores one vector space per vertex and one matrix
per arrow (row-vector convention, see :mod:`reltilt.algebra`).  Morphisms are
:class:`RepHom` values holding one matrix per vertex.  Everything here is
exact arithmetic over F_p.
"""

from __future__ import annotations

import warnings
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import sympy

from . import field as F
from .algebra import BoundQuiverAlgebra


class ModuleError(ValueError):
    pass


class CapExceeded(RuntimeError):
    """Raised when an enumeration would exceed an explicit size cap."""


class Representation:
    """A representation of a bound quiver.

    Args:
        algebra: The algebra the module lives over.
        dims: Dimension at each vertex, in ``algebra.vertices`` order (a
            mapping from vertex to dimension is accepted too).
        maps: Arrow id to matrix of shape ``(dims[source], dims[target])``.
            Missing arrows default to zero.
        check: Verify shapes and that every relation acts as zero.
    """

    def __init__(self, algebra: BoundQuiverAlgebra, dims, maps: Optional[Mapping] = None, check: bool = True):
        self.algebra = algebra
        vs = algebra.vertices
        if isinstance(dims, Mapping):
            dims = [int(dims.get(v, 0)) for v in vs]
        self.dims: Tuple[int, ...] = tuple(int(d) for d in dims)
        if len(self.dims) != len(vs) or any(d < 0 for d in self.dims):
            raise ModuleError("dimension vector does not match the quiver")
        vi = algebra.quiver.vertex_index
        p = algebra.p
        self.maps: Dict[str, np.ndarray] = {}
        maps = dict(maps or {})
        for a in algebra.quiver.arrows:
            shape = (self.dims[vi[a.source]], self.dims[vi[a.target]])
            if a.id in maps:
                m = F.as_matrix(maps.pop(a.id), p, shape=shape)
                if m.shape != shape:
                    raise ModuleError(f"matrix for arrow {a.id} has shape {m.shape}, expected {shape}")
            else:
                m = F.zeros(*shape)
            self.maps[a.id] = m
        if maps:
            raise ModuleError(f"unknown arrows {sorted(maps)}")
        self._path_cache: Dict[int, np.ndarray] = {}
        if self.total_dim >= p:
            raise ModuleError(f"module dimension {self.total_dim} is not below the prime {p}")
        if check:
            self._check_relations()

    # ------------------------------------------------------------------
    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def dim_vector(self) -> Tuple[int, ...]:
        return self.dims

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def dim_at(self, v) -> int:
        return self.dims[self.algebra.quiver.vertex_index[v]]

    def offsets(self) -> List[int]:
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return out

    def _check_relations(self) -> None:
        for rel in self.algebra.relations:
            acc = None
            for word, c in rel.items():
                m = self.word_matrix(word)
                acc = (c * m) % self.p if acc is None else (acc + c * m) % self.p
            if acc is not None and np.any(acc):
                raise ModuleError("representation does not satisfy the relations")

    def word_matrix(self, word: Sequence[str]) -> np.ndarray:
        """Matrix of a nonempty arrow word acting on the source space."""
        return F.matmul(*[self.maps[a] for a in word], p=self.p)

    def path_matrix(self, i: int) -> np.ndarray:
        """Matrix by which basis path ``i`` of the algebra acts."""
        m = self._path_cache.get(i)
        if m is None:
            b = self.algebra.basis[i]
            if b.arrows:
                m = self.word_matrix(b.arrows)
            else:
                m = F.identity(self.dim_at(b.source))
            self._path_cache[i] = m
        return m

    def act(self, u, w, x: np.ndarray) -> np.ndarray:
        """Matrix of an element ``x`` of e_u A e_w acting M_u -> M_w."""
        out = F.zeros(self.dim_at(u), self.dim_at(w))
        for i in self.algebra.paths_between(u, w):
            if x[i]:
                out = (out + int(x[i]) * self.path_matrix(i)) % self.p
        return out

    # ------------------------------------------------------------------
    def dual(self) -> "Representation":
        """The F_p-dual, a representation of the opposite algebra."""
        op = self.algebra.opposite()
        return Representation(op, self.dims, {a: m.T.copy() for a, m in self.maps.items()}, check=False)

    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "maps": {a: m.tolist() for a, m in self.maps.items()},
        }

    @classmethod
    def from_dict(cls, algebra: BoundQuiverAlgebra, data: Mapping) -> "Representation":
        dims = data["dims"]
        if isinstance(dims, Mapping):
            vs = {str(v): v for v in algebra.vertices}
            dims = {vs.get(str(k), k): d for k, d in dims.items()}
        return cls(algebra, dims, data.get("maps", {}))

    def key(self) -> bytes:
        """Byte string identifying the exact matrices (not the iso class)."""
        parts = [np.array(self.dims, dtype=np.int64).tobytes()]
        parts += [self.maps[a.id].tobytes() for a in self.algebra.quiver.arrows]
        return b"|".join(parts)

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims})"


class RepHom:
    """A morphism of representations, one matrix per vertex.

    ``mats[i]`` has shape ``(source.dims[i], target.dims[i])``.
    """

    def __init__(self, source: Representation, target: Representation, mats: Sequence[np.ndarray], check: bool = False):
        self.source = source
        self.target = target
        p = source.p
        self.mats: Tuple[np.ndarray, ...] = tuple(
            F.as_matrix(m, p, shape=(s, t)) for m, s, t in zip(mats, source.dims, target.dims)
        )
        if check and not self.is_morphism():
            raise ModuleError("matrices do not commute with the arrow actions")

    @property
    def p(self) -> int:
        return self.source.p

    def is_morphism(self) -> bool:
        vi = self.source.algebra.quiver.vertex_index
        for a in self.source.algebra.quiver.arrows:
            s, t = vi[a.source], vi[a.target]
            lhs = F.matmul(self.source.maps[a.id], self.mats[t], p=self.p)
            rhs = F.matmul(self.mats[s], self.target.maps[a.id], p=self.p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def then(self, other: "RepHom") -> "RepHom":
        """The composite "self, then other"."""
        return RepHom(self.source, other.target, [F.matmul(a, b, p=self.p) for a, b in zip(self.mats, other.mats)])

    def __add__(self, other: "RepHom") -> "RepHom":
        return RepHom(self.source, self.target, [(a + b) % self.p for a, b in zip(self.mats, other.mats)])

    def scale(self, c: int) -> "RepHom":
        return RepHom(self.source, self.target, [(int(c) * a) % self.p for a in self.mats])

    def flat(self) -> np.ndarray:
        if not self.mats:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([m.ravel() for m in self.mats])

    def is_zero(self) -> bool:
        return not any(np.any(m) for m in self.mats)

    def is_iso(self) -> bool:
        return all(m.shape[0] == m.shape[1] and F.is_invertible(m, self.p) for m in self.mats)

    def rank(self) -> int:
        return sum(F.rank(m, self.p) for m in self.mats)

    def __repr__(self) -> str:
        return f"RepHom({self.source.dims} -> {self.target.dims})"


def compose(g: RepHom, f: RepHom) -> RepHom:
    """``g ∘ f`` (apply ``f`` first)."""
    return f.then(g)


def identity_hom(M: Representation) -> RepHom:
    return RepHom(M, M, [F.identity(d) for d in M.dims])


def zero_hom(M: Representation, N: Representation) -> RepHom:
    return RepHom(M, N, [F.zeros(a, b) for a, b in zip(M.dims, N.dims)])


def hom_from_flat(M: Representation, N: Representation, vec: np.ndarray) -> RepHom:
    mats, pos = [], 0
    for a, b in zip(M.dims, N.dims):
        mats.append(np.asarray(vec[pos : pos + a * b], dtype=np.int64).reshape(a, b))
        pos += a * b
    return RepHom(M, N, mats)


def zero_module(algebra: BoundQuiverAlgebra) -> Representation:
    return Representation(algebra, [0] * len(algebra.vertices), check=False)


def _same_algebra(M: Representation, N: Representation) -> None:
    if M.algebra is not N.algebra:
        raise ModuleError("modules live over different algebras")


# ----------------------------------------------------------------------
# Hom spaces


def hom_matrix(M: Representation, N: Representation) -> np.ndarray:
    """Rows = flattened basis of Hom(M, N)."""
    _same_algebra(M, N)
    p = M.p
    sizes = [a * b for a, b in zip(M.dims, N.dims)]
    total = sum(sizes)
    if total == 0:
        return F.zeros(0, 0)
    off = np.cumsum([0] + sizes)
    vi = M.algebra.quiver.vertex_index
    blocks = []
    for a in M.algebra.quiver.arrows:
        s, t = vi[a.source], vi[a.target]
        ms, nt = M.dims[s], N.dims[t]
        if ms * nt == 0:
            continue
        row = F.zeros(ms * nt, total)
        # A F_t - F_s B = 0 with A = M_a, B = N_a (row-major vec identities)
        row[:, off[t] : off[t + 1]] += np.kron(M.maps[a.id], F.identity(nt))
        row[:, off[s] : off[s + 1]] -= np.kron(F.identity(ms), N.maps[a.id].T)
        blocks.append(row % p)
    if not blocks:
        return F.identity(total)
    return F.nullspace(np.vstack(blocks), p)


def hom_basis(M: Representation, N: Representation) -> List[RepHom]:
    """F_p-basis of Hom(M, N).

    Args:
        M: Source module.
        N: Target module.
    """
    return [hom_from_flat(M, N, row) for row in hom_matrix(M, N)]


def hom_dim(M: Representation, N: Representation) -> int:
    return hom_matrix(M, N).shape[0]


# ----------------------------------------------------------------------
# sub- and quotient objects


def submodule(N: Representation, bases: Sequence[np.ndarray]) -> Tuple[Representation, RepHom]:
    """The subrepresentation spanned by per-vertex row bases.

    Args:
        N: Ambient module.
        bases: For each vertex, a matrix whose rows form a basis of an
            arrow-stable subspace of ``N`` at that vertex.

    Returns:
        ``(K, inclusion)``.
    """
    p = N.p
    bases = [F.as_rows(b, d) for b, d in zip(bases, N.dims)]
    vi = N.algebra.quiver.vertex_index
    maps = {}
    for a in N.algebra.quiver.arrows:
        s, t = vi[a.source], vi[a.target]
        img = F.matmul(bases[s], N.maps[a.id], p=p)
        if bases[s].shape[0] == 0:
            maps[a.id] = F.zeros(0, bases[t].shape[0])
            continue
        coeff = F.express(bases[t], img, p) if bases[t].shape[0] else (None if np.any(img) else F.zeros(bases[s].shape[0], 0))
        if coeff is None:
            raise ModuleError("subspaces are not stable under the arrows")
        maps[a.id] = coeff.reshape(bases[s].shape[0], bases[t].shape[0])
    K = Representation(N.algebra, [b.shape[0] for b in bases], maps, check=False)
    return K, RepHom(K, N, bases)


def quotient(N: Representation, bases: Sequence[np.ndarray]) -> Tuple[Representation, RepHom]:
    """Quotient of ``N`` by an arrow-stable family of subspaces.

    Returns:
        ``(Q, projection)``.
    """
    p = N.p
    reps, projs = [], []
    for b, d in zip(bases, N.dims):
        b = F.row_basis(F.as_rows(b, d), p)
        c = F.complement(b, d, p)
        full = np.vstack([b, c]) if d else F.zeros(0, 0)
        inv = F.inverse(full, p) if d else F.zeros(0, 0)
        reps.append(c)
        projs.append(inv[:, b.shape[0] :])
    vi = N.algebra.quiver.vertex_index
    maps = {}
    for a in N.algebra.quiver.arrows:
        s, t = vi[a.source], vi[a.target]
        maps[a.id] = F.matmul(reps[s], N.maps[a.id], projs[t], p=p)
    Q = Representation(N.algebra, [c.shape[0] for c in reps], maps, check=False)
    return Q, RepHom(N, Q, projs)


def kernel(f: RepHom) -> Tuple[Representation, RepHom]:
    return submodule(f.source, [F.left_nullspace(m, f.p) for m in f.mats])


def image(f: RepHom) -> Tuple[Representation, RepHom]:
    return submodule(f.target, [F.row_basis(m, f.p) for m in f.mats])


def cokernel(f: RepHom) -> Tuple[Representation, RepHom]:
    return quotient(f.target, [F.row_basis(m, f.p) for m in f.mats])


def image_bases(homs: Iterable[RepHom], N: Representation) -> List[np.ndarray]:
    """Per-vertex bases of the sum of the images of ``homs`` in ``N``."""
    p = N.p
    stacks: List[List[np.ndarray]] = [[] for _ in N.dims]
    for f in homs:
        for i, m in enumerate(f.mats):
            if m.size:
                stacks[i].append(m)
    return [F.row_basis(np.vstack(s), p) if s else F.zeros(0, d) for s, d in zip(stacks, N.dims)]


def direct_sum(mods: Sequence[Representation]) -> Tuple[Representation, List[RepHom], List[RepHom]]:
    """Direct sum with its canonical inclusions and projections."""
    if not mods:
        raise ModuleError("direct_sum needs at least one summand")
    alg = mods[0].algebra
    n = len(alg.vertices)
    dims = [sum(M.dims[i] for M in mods) for i in range(n)]
    maps = {a: F.block_diag([M.maps[a] for M in mods]) for a in mods[0].maps}
    S = Representation(alg, dims, maps, check=False)
    incs, projs = [], []
    offs = [0] * n
    for M in mods:
        inc, pr = [], []
        for i in range(n):
            e = F.zeros(M.dims[i], dims[i])
            e[:, offs[i] : offs[i] + M.dims[i]] = F.identity(M.dims[i])
            inc.append(e)
            pr.append(e.T.copy())
            offs[i] += M.dims[i]
        incs.append(RepHom(M, S, inc))
        projs.append(RepHom(S, M, pr))
    return S, incs, projs


def hom_into_sum(M: Representation, target: Representation, parts: Sequence[RepHom]) -> RepHom:
    """Column map ``M -> ⊕ N_k`` assembled from components ``M -> N_k``."""
    mats = [np.hstack([f.mats[i] for f in parts]) if parts else F.zeros(M.dims[i], 0) for i in range(len(M.dims))]
    return RepHom(M, target, mats)


def hom_from_sum(source: Representation, N: Representation, parts: Sequence[RepHom]) -> RepHom:
    """Row map ``⊕ M_k -> N`` assembled from components ``M_k -> N``."""
    mats = [np.vstack([f.mats[i] for f in parts]) if parts else F.zeros(0, N.dims[i]) for i in range(len(N.dims))]
    return RepHom(source, N, mats)


def radical_bases(M: Representation) -> List[np.ndarray]:
    """Per-vertex bases of rad M (sum of images of all arrows)."""
    p = M.p
    vi = M.algebra.quiver.vertex_index
    stacks: List[List[np.ndarray]] = [[] for _ in M.dims]
    for a in M.algebra.quiver.arrows:
        stacks[vi[a.target]].append(M.maps[a.id])
    return [F.row_basis(np.vstack(s), p) if s else F.zeros(0, d) for s, d in zip(stacks, M.dims)]


def socle_bases(M: Representation) -> List[np.ndarray]:
    """Per-vertex bases of soc M (common kernel of all outgoing arrows)."""
    p = M.p
    vi = M.algebra.quiver.vertex_index
    out = []
    for i, d in enumerate(M.dims):
        outs = [M.maps[a.id] for a in M.algebra.quiver.arrows if vi[a.source] == i]
        out.append(F.left_nullspace(np.hstack(outs), p) if outs and d else F.identity(d))
    return out


def top(M: Representation) -> Tuple[Representation, RepHom]:
    return quotient(M, radical_bases(M))


# ----------------------------------------------------------------------
# projective modules


def projective_module(alg: BoundQuiverAlgebra, vertices: Sequence) -> Representation:
    """The projective ``⊕_j e_{v_j} A`` (cached on the algebra).

    The coordinates at vertex ``u`` are the pairs ``(j, b)`` with ``b`` a
    basis path from ``v_j`` to ``u``, listed in ``alg.proj_coords``.
    """
    vertices = tuple(vertices)
    cache = alg.__dict__.setdefault("_proj_cache", {})
    if vertices in cache:
        return cache[vertices]
    coords = {u: [(j, b) for j, v in enumerate(vertices) for b in alg.paths_between(v, u)] for u in alg.vertices}
    pos = {u: {c: k for k, c in enumerate(coords[u])} for u in alg.vertices}
    maps = {}
    for a in alg.quiver.arrows:
        m = F.zeros(len(coords[a.source]), len(coords[a.target]))
        ai = alg.arrow_element[a.id]
        for r, (j, b) in enumerate(coords[a.source]):
            prod = alg.table[b, ai]
            for c in np.nonzero(prod)[0]:
                m[r, pos[a.target][(j, int(c))]] = prod[c]
        maps[a.id] = m
    P = Representation(alg, [len(coords[u]) for u in alg.vertices], maps, check=False)
    P.proj_vertices = vertices
    P.proj_coords = coords
    P.proj_pos = pos
    cache[vertices] = P
    return P


def projective_morphism(alg: BoundQuiverAlgebra, src: Sequence, tgt: Sequence, d: np.ndarray) -> RepHom:
    """The module map ``⊕ P_{src_i} -> ⊕ P_{tgt_j}`` given by left multiplication.

    Args:
        alg: Algebra.
        src: Source vertices.
        tgt: Target vertices.
        d: Array of shape ``(len(tgt), len(src), dim A)``; entry ``[j, i]``
            is an element of ``e_{tgt_j} A e_{src_i}``.
    """
    P = projective_module(alg, src)
    Q = projective_module(alg, tgt)
    p = alg.p
    mats = []
    for u in alg.vertices:
        m = F.zeros(len(P.proj_coords[u]), len(Q.proj_coords[u]))
        for r, (i, b) in enumerate(P.proj_coords[u]):
            if len(tgt) == 0:
                break
            # (F[j,i] · b) for every j at once
            vals = (d[:, i, :] @ alg.table[:, b, :]) % p
            for j in range(len(tgt)):
                for c in np.nonzero(vals[j])[0]:
                    m[r, Q.proj_pos[u][(j, int(c))]] = vals[j, c]
        mats.append(m)
    return RepHom(P, Q, mats)


def hom_from_projective(P: Representation, M: Representation, gens: Sequence[np.ndarray]) -> RepHom:
    """Map ``⊕ P_{v_i} -> M`` sending the i-th generator ``e_{v_i}`` to ``gens[i]``."""
    alg = M.algebra
    vi = alg.quiver.vertex_index
    mats = []
    for u in alg.vertices:
        rows = [F.matmul(np.asarray(gens[j], dtype=np.int64).reshape(1, -1), M.path_matrix(b), p=M.p)[0] for j, b in P.proj_coords[u]]
        mats.append(np.array(rows, dtype=np.int64).reshape(len(rows), M.dims[vi[u]]))
    return RepHom(P, M, mats)


def generator_images(f: RepHom) -> List[np.ndarray]:
    """Images of the generators ``e_{v_i}`` under a map out of a projective."""
    P = f.source
    alg = P.algebra
    vi = alg.quiver.vertex_index
    out = []
    for j, v in enumerate(P.proj_vertices):
        r = P.proj_pos[v][(j, alg.idempotent[v])]
        out.append(f.mats[vi[v]][r].copy())
    return out


def elements_from_projective_vectors(P: Representation, u, vec: np.ndarray) -> np.ndarray:
    """Split a vector of ``P_u`` into algebra elements, one per summand.

    Returns:
        Array of shape ``(len(P.proj_vertices), dim A)``.
    """
    alg = P.algebra
    out = np.zeros((len(P.proj_vertices), alg.dim), dtype=np.int64)
    for k, (j, b) in enumerate(P.proj_coords[u]):
        out[j, b] = vec[k]
    return out


class ProjectiveCover(NamedTuple):
    vertices: Tuple
    module: Representation
    map: RepHom


def projective_cover(M: Representation) -> ProjectiveCover:
    """Projective cover obtained by lifting a basis of top M."""
    alg = M.algebra
    p = M.p
    rad = radical_bases(M)
    verts, gens = [], []
    for i, v in enumerate(alg.vertices):
        comp = F.complement(rad[i], M.dims[i], p)
        for row in comp:
            verts.append(v)
            gens.append(row)
    P = projective_module(alg, tuple(verts))
    return ProjectiveCover(tuple(verts), P, hom_from_projective(P, M, gens))


class Presentation(NamedTuple):
    """Minimal projective presentation ``P1 --d--> P0 --cover--> M -> 0``.

    ``d`` is stored as an array of algebra elements (see
    :func:`projective_morphism`); ``syzygy_inclusion`` is ``ΩM -> P0``.
    """

    p1: Tuple
    p0: Tuple
    d: np.ndarray
    cover: RepHom
    syzygy: Representation
    syzygy_inclusion: RepHom


def minimal_projective_presentation(M: Representation) -> Presentation:
    alg = M.algebra
    cov = projective_cover(M)
    omega, inc = kernel(cov.map)
    cov1 = projective_cover(omega)
    into_p0 = cov1.map.then(inc)
    d = np.zeros((len(cov.vertices), len(cov1.vertices), alg.dim), dtype=np.int64)
    for i, g in enumerate(generator_images(into_p0)):
        u = cov1.vertices[i]
        d[:, i, :] = elements_from_projective_vectors(cov.module, u, g)
    return Presentation(cov1.vertices, cov.vertices, d, cov.map, omega, inc)


def is_projective(M: Representation) -> bool:
    if M.is_zero():
        return True
    return projective_cover(M).module.total_dim == M.total_dim


def is_injective(M: Representation) -> bool:
    return is_projective(M.dual())


def injective_module(alg: BoundQuiverAlgebra, vertices: Sequence) -> Representation:
    """``⊕ I_v`` with ``I_v = D(A e_v)``."""
    return projective_module(alg.opposite(), tuple(vertices)).dual()


def dual_hom(f: RepHom) -> RepHom:
    """``Df: DN -> DM``."""
    return RepHom(f.target.dual(), f.source.dual(), [m.T.copy() for m in f.mats])


def dual_hom_into(f: RepHom, source: Representation, target: Representation) -> RepHom:
    """Transpose ``f`` and attach it to given (already dualized) modules."""
    return RepHom(source, target, [m.T.copy() for m in f.mats])


def nakayama_morphism(alg: BoundQuiverAlgebra, p1: Sequence, p0: Sequence, d: np.ndarray) -> RepHom:
    """``ν(d): νP1 -> νP0`` for a map of projectives given by ``d``."""
    op = alg.opposite()
    perm = alg.op_index()
    d_op = np.zeros((len(p1), len(p0), alg.dim), dtype=np.int64)
    for j in range(len(p0)):
        for i in range(len(p1)):
            d_op[i, j, perm] = d[j, i]
    g = projective_morphism(op, tuple(p0), tuple(p1), d_op)
    return dual_hom_into(g, g.target.dual(), g.source.dual())


def ar_translate(M: Representation, strip: bool = True) -> Representation:
    """τM = D Tr M, via ``ker(ν(d))`` for a minimal presentation ``d``.

    Projective summands contribute zero automatically, so ``strip`` only
    controls whether a warning is emitted for them.
    """
    if M.is_zero():
        return zero_module(M.algebra)
    if strip:
        decomposed = split(M)
        if any(is_projective(N) for N, _ in decomposed):
            warnings.warn("projective summands stripped before applying the AR translate", stacklevel=2)
    pres = minimal_projective_presentation(M)
    if not pres.p1:
        return zero_module(M.algebra)
    nu = nakayama_morphism(M.algebra, pres.p1, pres.p0, pres.d)
    return kernel(nu)[0]


def inverse_ar_translate(M: Representation, strip: bool = True) -> Representation:
    """τ⁻M = D τ_{A^op} D M."""
    if M.is_zero():
        return zero_module(M.algebra)
    t = ar_translate(M.dual(), strip=False)
    return Representation(M.algebra, t.dims, {a: m.T.copy() for a, m in t.maps.items()}, check=False)


# ----------------------------------------------------------------------
# Ext


class ExtData(NamedTuple):
    presentation: Presentation
    hom_omega: np.ndarray  # rows: flattened basis of Hom(ΩM, N)
    restricted: np.ndarray  # rows spanning the image of Hom(P0, N) in Hom(ΩM, N)


def ext1_data(M: Representation, N: Representation, pres: Optional[Presentation] = None) -> ExtData:
    _same_algebra(M, N)
    pres = pres or minimal_projective_presentation(M)
    omega, inc = pres.syzygy, pres.syzygy_inclusion
    H = hom_matrix(omega, N)
    P0 = pres.cover.source
    rows = [inc.then(f).flat() for f in hom_basis(P0, N)]
    width = sum(a * b for a, b in zip(omega.dims, N.dims))
    R = np.array(rows, dtype=np.int64).reshape(len(rows), width)
    return ExtData(pres, F.as_rows(H, width), R)


def ext1_dim(M: Representation, N: Representation) -> int:
    """dim Ext¹(M, N) = dim coker(Hom(P0, N) -> Hom(ΩM, N))."""
    if M.is_zero() or N.is_zero():
        return 0
    data = ext1_data(M, N)
    return data.hom_omega.shape[0] - F.rank(data.restricted, M.p)


def ext1_classes(M: Representation, N: Representation, pres: Optional[Presentation] = None) -> List[RepHom]:
    """Maps ``ΩM -> N`` whose classes form a basis of Ext¹(M, N)."""
    if M.is_zero() or N.is_zero():
        return []
    data = ext1_data(M, N, pres)
    reps = F.quotient_complement(data.hom_omega, data.restricted, M.p)
    return [hom_from_flat(data.presentation.syzygy, N, row) for row in reps]


def extension_middle(pres: Presentation, eta: RepHom) -> Representation:
    """Middle term of the extension of ``M`` by ``N`` with class ``eta: ΩM -> N``.

    It is the pushout of ``ΩM -> P0`` along ``eta``, i.e. the cokernel of
    ``ΩM -> N ⊕ P0`` with components ``(eta, -inclusion)``.
    """
    N = eta.target
    P0 = pres.cover.source
    S, _, _ = direct_sum([N, P0])
    neg_inc = pres.syzygy_inclusion.scale(-1)
    push = RepHom(pres.syzygy, S, [np.hstack([a, b]) for a, b in zip(eta.mats, neg_inc.mats)])
    E, _ = cokernel(push)
    return E


def injective_envelope(N: Representation) -> Tuple[Representation, RepHom]:
    """``N -> I(N)`` obtained by dualizing a projective cover of ``DN``."""
    cov = projective_cover(N.dual())
    I = cov.module.dual()
    # D(cover): D(DN) = N -> D(P)
    return I, RepHom(N, I, [m.T.copy() for m in cov.map.mats])


def stable_hom_injective_dim(N: Representation, L: Representation) -> int:
    """dim of Hom(N, L) modulo maps factoring through an injective."""
    H = hom_matrix(N, L)
    if H.shape[0] == 0:
        return 0
    I, iota = injective_envelope(N)
    through = [iota.then(g).flat() for g in hom_basis(I, L)]
    r = F.rank(np.array(through, dtype=np.int64), N.p) if through else 0
    return H.shape[0] - r


# ----------------------------------------------------------------------
# endomorphisms, decomposition, isomorphism


def endomorphism_data(M: Representation) -> Tuple[List[RepHom], np.ndarray]:
    """Basis of End(M) and the Gram matrix of the trace form."""
    E = hom_basis(M, M)
    k = len(E)
    G = F.zeros(k, k)
    p = M.p
    for i in range(k):
        for j in range(k):
            G[i, j] = sum(int(np.trace(F.matmul(E[i].mats[v], E[j].mats[v], p=p))) for v in range(len(M.dims))) % p
    return E, G


def radical_of_endomorphisms(M: Representation) -> List[RepHom]:
    """Basis of rad End(M) as the kernel of the trace form (needs p > dim M)."""
    E, G = endomorphism_data(M)
    coeffs = F.left_nullspace(G, M.p)
    return [_combine(E, c, M.p) for c in coeffs]


def _combine(homs: Sequence[RepHom], coeffs: np.ndarray, p: int) -> RepHom:
    base = homs[0]
    mats = [F.zeros(*m.shape) for m in base.mats]
    for c, h in zip(coeffs, homs):
        if c:
            mats = [(a + int(c) * b) % p for a, b in zip(mats, h.mats)]
    return RepHom(base.source, base.target, mats)


def _minimal_polynomial(mats: Sequence[np.ndarray], p: int) -> List[int]:
    """Monic minimal polynomial (coefficients, constant term first)."""
    mats = [m for m in mats if m.size]
    if not mats:
        return [1]
    powers = [[F.identity(m.shape[0]) for m in mats]]
    n = sum(m.shape[0] for m in mats)
    for k in range(1, n + 1):
        powers.append([F.matmul(a, b, p=p) for a, b in zip(powers[-1], mats)])
        rows = np.array([np.concatenate([m.ravel() for m in pw]) for pw in powers], dtype=np.int64)
        rel = F.left_nullspace(rows, p)
        if rel.shape[0]:
            c = rel[0]
            lead = int(c[-1])
            return [int(x) * F.inv_scalar(lead, p) % p for x in c]
    raise AssertionError("minimal polynomial search exceeded the dimension")


def _eval_poly(coeffs: Sequence[int], mats: Sequence[np.ndarray], p: int) -> List[np.ndarray]:
    out = [F.zeros(*m.shape) for m in mats]
    for c in reversed(coeffs):
        out = [(F.matmul(o, m, p=p) + int(c) * F.identity(m.shape[0])) % p for o, m in zip(out, mats)]
    return out


def _factor(coeffs: Sequence[int], p: int) -> List[Tuple[List[int], int]]:
    t = sympy.Symbol("t")
    poly = sympy.Poly(list(reversed([int(c) for c in coeffs])), t, modulus=p)
    _, factors = poly.factor_list()
    out = []
    for f, e in factors:
        cs = [int(c) % p for c in reversed(f.all_coeffs())]
        out.append((cs, int(e)))
    return out


def _poly_power(coeffs: Sequence[int], e: int, p: int) -> List[int]:
    t = sympy.Symbol("t")
    poly = sympy.Poly(list(reversed([int(c) for c in coeffs])), t, modulus=p) ** e
    return [int(c) % p for c in reversed(poly.all_coeffs())]


def split(M: Representation, seed: int = 0, tries: int = 64) -> List[Tuple[Representation, RepHom]]:
    """Split ``M`` into indecomposable summands with their inclusions.

    Fitting's lemma is applied to endomorphisms whose minimal polynomial has
    two coprime factors.  A summand is declared indecomposable only when
    certified: either End has a one-dimensional semisimple quotient, or some
    endomorphism has minimal polynomial ``g^e`` with ``deg g`` equal to
    ``dim End/rad``, which forces End/rad to be a field.
    """
    if M.is_zero():
        return []
    p = M.p
    E, G = endomorphism_data(M)
    r = F.rank(G, p)
    if len(E) == 1 or r == 1:
        return [(M, identity_hom(M))]
    rng = np.random.default_rng(seed)
    for attempt in range(len(E) + tries):
        if attempt < len(E):
            x = E[attempt]
        else:
            x = _combine(E, F.random_matrix(rng, 1, len(E), p)[0], p)
        mu = _minimal_polynomial(x.mats, p)
        factors = _factor(mu, p)
        if len(factors) >= 2:
            g, e = factors[0]
            y = _eval_poly(_poly_power(g, e, p), x.mats, p)
            n = M.total_dim
            yn = [_mat_pow(m, n, p) for m in y]
            ker_b = [F.left_nullspace(m, p) for m in yn]
            im_b = [F.row_basis(m, p) for m in yn]
            out = []
            for bases in (ker_b, im_b):
                N, inc = submodule(M, bases)
                out.extend((S, i.then(inc)) for S, i in split(N, seed, tries))
            return out
        if len(factors) == 1 and len(factors[0][0]) - 1 == r:
            return [(M, identity_hom(M))]
    raise RuntimeError("could not certify a decomposition; increase the number of tries")


def _mat_pow(m: np.ndarray, n: int, p: int) -> np.ndarray:
    out = F.identity(m.shape[0])
    base = m % p
    while n:
        if n & 1:
            out = F.matmul(out, base, p=p)
        base = F.matmul(base, base, p=p)
        n >>= 1
    return out


def is_indecomposable(M: Representation) -> bool:
    return not M.is_zero() and len(split(M)) == 1


def isomorphic_indecomposables(M: Representation, N: Representation) -> bool:
    """Isomorphism test for two indecomposable modules.

    Some composite ``g ∘ f`` of basis maps ``f: M -> N``, ``g: N -> M`` is
    outside the radical of the local ring End(M) exactly when M ≅ N.
    """
    if M.dims != N.dims:
        return False
    if M.is_zero():
        return True
    fs = hom_basis(M, N)
    if not fs:
        return False
    gs = hom_basis(N, M)
    for f in fs:
        for g in gs:
            if f.then(g).is_iso():
                return True
    return False


class Summand(NamedTuple):
    module: Representation
    multiplicity: int


def decompose(M: Representation) -> List[Summand]:
    """Indecomposable summands of ``M`` grouped up to isomorphism."""
    groups: List[List] = []
    for N, _ in split(M):
        for g in groups:
            if isomorphic_indecomposables(g[0], N):
                g[1] += 1
                break
        else:
            groups.append([N, 1])
    return [Summand(N, k) for N, k in groups]


def is_isomorphic(M: Representation, N: Representation) -> bool:
    if M.dims != N.dims:
        return False
    a, b = decompose(M), decompose(N)
    if sorted(s.multiplicity for s in a) != sorted(s.multiplicity for s in b):
        return False
    used = set()
    for S, k in a:
        for j, (T, m) in enumerate(b):
            if j not in used and k == m and isomorphic_indecomposables(S, T):
                used.add(j)
                break
        else:
            return False
    return True


# ----------------------------------------------------------------------
# approximations and Fac


class Approximation(NamedTuple):
    """A (minimal) approximation.

    ``summands[k]`` is the index into the class list of the k-th summand of
    the middle object; ``map`` is the assembled morphism.
    """

    summands: Tuple[int, ...]
    obj: Representation
    map: RepHom


def _span_rank(rows: List[np.ndarray], width: int, p: int) -> int:
    if not rows:
        return 0
    return F.rank(np.array(rows, dtype=np.int64).reshape(len(rows), width), p)


def right_approximation(M: Representation, S: Sequence[Representation]) -> Approximation:
    """Minimal right add(S)-approximation ``⊕ S_k -> M``.

    Args:
        M: Module to approximate.
        S: Indecomposable modules spanning the class.
    """
    p = M.p
    comps: List[Tuple[int, RepHom]] = [(i, f) for i, X in enumerate(S) for f in hom_basis(X, M)]
    target_dims = {j: hom_dim(S[j], M) for j in range(len(S))}
    inner = {(j, i): hom_basis(S[j], S[i]) for j in range(len(S)) for i in range(len(S))}

    def works(sel):
        for j in range(len(S)):
            width = sum(a * b for a, b in zip(S[j].dims, M.dims))
            rows = [g.then(f).flat() for k in sel for (i, f) in [comps[k]] for g in inner[(j, i)]]
            if _span_rank(rows, width, p) != target_dims[j]:
                return False
        return True

    sel = list(range(len(comps)))
    for k in reversed(range(len(comps))):
        trial = [s for s in sel if s != k]
        if works(trial):
            sel = trial
    return _assemble_right(M, S, [comps[k] for k in sel])


def _assemble_right(M, S, parts) -> Approximation:
    if not parts:
        Z = zero_module(M.algebra)
        return Approximation((), Z, zero_hom(Z, M))
    src, _, _ = direct_sum([S[i] for i, _ in parts])
    return Approximation(tuple(i for i, _ in parts), src, hom_from_sum(src, M, [f for _, f in parts]))


def left_approximation(M: Representation, S: Sequence[Representation]) -> Approximation:
    """Minimal left add(S)-approximation ``M -> ⊕ S_k``."""
    p = M.p
    comps: List[Tuple[int, RepHom]] = [(i, f) for i, X in enumerate(S) for f in hom_basis(M, X)]
    target_dims = {j: hom_dim(M, S[j]) for j in range(len(S))}
    inner = {(i, j): hom_basis(S[i], S[j]) for j in range(len(S)) for i in range(len(S))}

    def works(sel):
        for j in range(len(S)):
            width = sum(a * b for a, b in zip(M.dims, S[j].dims))
            rows = [f.then(g).flat() for k in sel for (i, f) in [comps[k]] for g in inner[(i, j)]]
            if _span_rank(rows, width, p) != target_dims[j]:
                return False
        return True

    sel = list(range(len(comps)))
    for k in reversed(range(len(comps))):
        trial = [s for s in sel if s != k]
        if works(trial):
            sel = trial
    parts = [comps[k] for k in sel]
    if not parts:
        Z = zero_module(M.algebra)
        return Approximation((), Z, zero_hom(M, Z))
    tgt, _, _ = direct_sum([S[i] for i, _ in parts])
    return Approximation(tuple(i for i, _ in parts), tgt, hom_into_sum(M, tgt, [f for _, f in parts]))


def trace_bases(M: Representation, S: Sequence[Representation]) -> List[np.ndarray]:
    """Per-vertex bases of the trace of add(S) in M (sum of all images)."""
    return image_bases((f for X in S for f in hom_basis(X, M)), M)


def in_fac(M: Representation, S: Sequence[Representation]) -> bool:
    """Whether ``M`` is a quotient of an object of add(S)."""
    return sum(b.shape[0] for b in trace_bases(M, S)) == M.total_dim


# ----------------------------------------------------------------------
# subobjects


def _subspaces(n: int, p: int) -> Iterable[np.ndarray]:
    """All subspaces of F_p^n as RREF row bases."""
    from itertools import combinations, product

    for k in range(n + 1):
        for piv in combinations(range(n), k):
            free = [(r, c) for r in range(k) for c in range(n) if c > piv[r] and c not in piv]
            for vals in product(range(p), repeat=len(free)):
                m = F.zeros(k, n)
                for r, c in enumerate(piv):
                    m[r, c] = 1
                for (r, c), v in zip(free, vals):
                    m[r, c] = v
                yield m


def count_subspaces(n: int, p: int) -> int:
    """Number of subspaces of F_p^n (sum of Gaussian binomials)."""
    total = 0
    for k in range(n + 1):
        num = den = 1
        for i in range(k):
            num *= p ** (n - i) - 1
            den *= p ** (i + 1) - 1
        total += num // den
    return total


def subobject_list(M: Representation, dim_cap: int = 8, count_cap: int = 200_000) -> List[Tuple[Representation, RepHom]]:
    """All subrepresentations of ``M`` with their inclusions.

    Args:
        M: Module whose subobjects are enumerated.
        dim_cap: Refuse modules of larger total dimension.
        count_cap: Refuse when the number of candidate subspace tuples
            exceeds this bound (it grows like a power of p for non-thin
            modules).

    Raises:
        CapExceeded: if either cap is exceeded.
    """
    if M.total_dim > dim_cap:
        raise CapExceeded(f"module of dimension {M.total_dim} exceeds the subobject cap {dim_cap}; use a smaller instance")
    p = M.p
    total = 1
    for d in M.dims:
        total *= count_subspaces(d, p)
    if total > count_cap:
        raise CapExceeded(f"{total} candidate subspace tuples exceed the cap {count_cap}; use a smaller instance")
    vi = M.algebra.quiver.vertex_index
    arrows = M.algebra.quiver.arrows
    out = []
    from itertools import product

    choices = [list(_subspaces(d, p)) for d in M.dims]
    for combo in product(*choices):
        ok = True
        for a in arrows:
            s, t = vi[a.source], vi[a.target]
            img = F.matmul(combo[s], M.maps[a.id], p=p)
            if img.size and np.any(img) and not F.in_row_space(combo[t], img, p):
                ok = False
                break
        if ok:
            out.append(submodule(M, combo))
    return out
