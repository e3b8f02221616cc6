"""Type A cluster categories as diagonals of a polygon.

The cluster category of type A_n is modelled by the diagonals ("arcs") of a
polygon with ``n + 3`` vertices labelled ``0 .. n+2``.  Only dimensions are
read off the geometry:

* ``dim Ext¹(a, b) = crossing_number(a, b)``;
* ``dim Hom(a, b) = crossing_number(a, rotate(b))``.

With ``rotate`` decrementing both endpoints, the shift that makes these two
formulas agree (``Hom(a, b[1]) = Ext¹(a, b)``) is the inverse rotation, so
``shift(a)`` increments the endpoints.  Mirroring the polygon swaps the two
conventions.

Everything structural is delegated to the endomorphism algebra Γ_R of a
rigid set of arcs R (a partial triangulation) and the two-term engine over
it; arcs are matched to two-term objects through Hom-dimension fingerprints.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import BoundQuiverAlgebra, build_algebra
from .atlas import IndecomposableAtlas, knit_atlas
from .completion import Key, Subcat, Workbench, canon
from .twoterm import TwoTermComplex, hom_k_shift1


class PolygonError(ValueError):
    """Invalid arcs, failed validation, or unrealizable arcs."""


@dataclass(frozen=True, order=True)
class Arc:
    """A diagonal ``(i, j)`` with ``i < j`` of an ``m``-gon."""

    i: int
    j: int
    m: int

    @staticmethod
    def make(a: int, b: int, m: int) -> "Arc":
        a, b = a % m, b % m
        if a == b:
            raise PolygonError(f"degenerate arc {a}-{b}")
        i, j = min(a, b), max(a, b)
        if j - i < 2 or (i + m - j) < 2:
            raise PolygonError(f"{i}-{j} is a boundary edge of the {m}-gon, not a diagonal")
        return Arc(i, j, m)

    @staticmethod
    def parse(text: str, m: int) -> "Arc":
        try:
            a, b = (int(t) for t in text.strip().split("-"))
        except ValueError:
            raise PolygonError(f"cannot parse arc {text!r}; expected 'i-j'") from None
        return Arc.make(a, b, m)

    def __str__(self) -> str:
        return f"{self.i}-{self.j}"

    @property
    def ends(self) -> Tuple[int, int]:
        return (self.i, self.j)


def all_arcs(m: int) -> List[Arc]:
    """Every diagonal of the ``m``-gon in sorted order."""
    return [Arc(i, j, m) for i in range(m) for j in range(i + 2, m) if not (i == 0 and j == m - 1)]


def crossing_number(a: Arc, b: Arc) -> int:
    """1 if the endpoints of ``a`` and ``b`` strictly interleave, else 0."""
    if a.m != b.m:
        raise PolygonError("arcs live in different polygons")
    if set(a.ends) & set(b.ends):
        return 0
    inside = [a.i < e < a.j for e in b.ends]
    return int(inside[0] != inside[1])


def rotate(a: Arc, k: int = 1) -> Arc:
    """Decrement both endpoints by ``k`` cyclically."""
    return Arc.make(a.i - k, a.j - k, a.m)


def shift(a: Arc) -> Arc:
    """The suspension [1] in the convention of this module."""
    return rotate(a, -1)


def hom_dim(a: Arc, b: Arc) -> int:
    return crossing_number(a, rotate(b))


def ext_dim(a: Arc, b: Arc) -> int:
    return crossing_number(a, b)


def is_noncrossing(arcs: Iterable[Arc]) -> bool:
    arcs = list(arcs)
    return all(crossing_number(a, b) == 0 for a, b in combinations(arcs, 2))


def triangulations(m: int) -> List[Tuple[Arc, ...]]:
    """All triangulations of the ``m``-gon (maximal non-crossing sets)."""
    arcs = all_arcs(m)
    size = m - 3
    return [t for t in combinations(arcs, size) if is_noncrossing(t)]


def partial_triangulations(m: int) -> List[Tuple[Arc, ...]]:
    """All non-empty non-crossing arc sets of the ``m``-gon."""
    arcs = all_arcs(m)
    out = []
    for k in range(1, m - 2):
        out.extend(t for t in combinations(arcs, k) if is_noncrossing(t))
    return out


def _same_side(b: Arc, x: int, y: int) -> bool:
    """Whether polygon vertices ``x`` and ``y`` (not endpoints of ``b``) lie on one side of ``b``."""
    return (b.i < x < b.j) == (b.i < y < b.j)


def tiling_end_algebra(R: Sequence[Arc], prime: Optional[int] = None) -> BoundQuiverAlgebra:
    """The endomorphism algebra Γ_R of a partial triangulation.

    One vertex per arc (vertex ``k`` is ``R[k]``).  At each polygon vertex
    the incident R-arcs are ordered by angle and rotationally adjacent arcs
    are joined by an arrow, pointing ``b -> a`` when ``Hom(a, b) != 0``.
    Two consecutive arrows that pivot at different endpoints and bound a
    common face compose to zero.

    The result is validated: ``dim e_b Γ e_a`` must equal
    ``hom_dim(a, b)`` for every pair of arcs.

    Args:
        R: Pairwise non-crossing arcs.
        prime: Optional field characteristic.

    Raises:
        PolygonError: If R crosses itself or validation fails.
    """
    R = list(R)
    if not R:
        raise PolygonError("empty partial triangulation")
    if len(set(R)) != len(R) or not is_noncrossing(R):
        raise PolygonError("R must consist of distinct pairwise non-crossing arcs")
    m = R[0].m
    arrows = []  # (id, source, target, pivot)
    for v in range(m):
        inc = sorted((k for k, a in enumerate(R) if v in a.ends), key=lambda k: (_other(R[k], v) - v) % m)
        for k, l in zip(inc, inc[1:]):
            a, b = R[k], R[l]
            if hom_dim(a, b):
                src, tgt = l, k
            elif hom_dim(b, a):
                src, tgt = k, l
            else:
                raise PolygonError(f"adjacent arcs {a} and {b} have no map between them")
            arrows.append((f"g{len(arrows)}", src, tgt, v))
    rels = []
    for (n1, s1, t1, v1) in arrows:
        for (n2, s2, t2, v2) in arrows:
            if t1 != s2 or v1 == v2:
                continue
            a, b, c = R[s1], R[t1], R[t2]
            if _same_side(b, _other(a, v1), _other(c, v2)):
                rels.append([(1, [n1, n2])])
    alg = build_algebra(list(range(len(R))), [(n, s, t) for n, s, t, _ in arrows], rels, prime=prime)
    for k, a in enumerate(R):
        for l, b in enumerate(R):
            got = len(alg.paths_between(l, k))
            want = hom_dim(a, b)
            if got != want:
                raise PolygonError(f"tiling algebra validation failed at ({a}, {b}): {got} != {want}")
    return alg


def _other(a: Arc, v: int) -> int:
    return a.j if a.i == v else a.i


def complete_triangulation(R: Sequence[Arc]) -> Tuple[Arc, ...]:
    """Extend R to a triangulation, keeping R first and adding arcs in sorted order."""
    T = list(R)
    for a in all_arcs(R[0].m):
        if a not in T and all(crossing_number(a, b) == 0 for b in T):
            T.append(a)
    return tuple(T)


class _Model:
    """Γ_R, its workbench and the fingerprint lookup of arcs."""

    def __init__(self, R: Sequence[Arc], prime: Optional[int], atlas: Optional[IndecomposableAtlas] = None):
        self.R = tuple(R)
        self.algebra = tiling_end_algebra(self.R, prime=prime)
        atlas = atlas or knit_atlas(self.algebra)
        atlas.require_complete()
        self.workbench = Workbench(self.algebra, atlas)

    def fingerprint(self, x: Arc) -> Tuple[int, ...]:
        return tuple(hom_dim(r, x) for r in self.R)

    def locate(self, x: Arc) -> Key:
        """The key whose object has the Hom fingerprint of ``x``, validated by Ext probes."""
        wb = self.workbench
        if x in self.R:
            return wb.stalk_key(self.R.index(x))
        for k, r in enumerate(self.R):
            if shift(r) == x:
                return wb.shift_key(k)
        fp = self.fingerprint(x)
        hits = [i for i, M in enumerate(wb.atlas.modules) if M.dims == fp]
        if len(hits) != 1:
            raise PolygonError(
                f"arc {x}: {len(hits)} indecomposable modules have fingerprint {fp}; use a larger R probe set"
            )
        key = ("mod", hits[0])
        U = wb.obj(key)
        for k, r in enumerate(self.R):
            if _shift_probe(wb, U, k) != ext_dim(x, r):
                raise PolygonError(f"arc {x}: Ext probe against {r} disagrees with its two-term lift")
        return key


class RelativeProblem:
    """A partial triangulation R with Γ_R and the arc <-> two-term dictionary.

    Membership of an arc in R * R[1] is decided over a triangulation T
    containing R: every arc has a minimal T-presentation ``T1 -> T0``, and
    the arc lies in R * R[1] exactly when both terms are in add R (a right
    R-approximation of such an arc is already a right T-approximation).

    Attributes:
        R: The arcs of R; vertex ``k`` of Γ_R is ``R[k]``.
        T: The triangulation used for the membership test.
        algebra: Γ_R.
        workbench: Two-term workbench over Γ_R.
        arc_of: Workbench key -> arc.
        key_of: Arc -> workbench key, for every arc in R * R[1].
        outside: Arcs not in R * R[1].
    """

    def __init__(self, R: Sequence[Arc], prime: Optional[int] = None):
        R = tuple(R)
        if not R:
            raise PolygonError("empty partial triangulation")
        self.R = R
        self.m = R[0].m
        self.T = complete_triangulation(R)
        model = _Model(R, prime)
        full = model if self.T == R else _Model(self.T, prime)
        self.algebra = model.algebra
        self.workbench = model.workbench
        self.key_of: Dict[Arc, Key] = {}
        self.arc_of: Dict[Key, Arc] = {}
        self.outside: List[Arc] = []
        inside = set(range(len(R)))
        for x in all_arcs(self.m):
            C = full.workbench.obj(full.locate(x))
            if not set(C.p1) | set(C.p0) <= inside:
                self.outside.append(x)
                continue
            key = model.locate(x)
            if key in self.arc_of:
                raise PolygonError(f"arcs {self.arc_of[key]} and {x} share a fingerprint; use a larger R probe set")
            self.key_of[x] = key
            self.arc_of[key] = x
        missing = [k for k in self.workbench.all_keys() if k not in self.arc_of]
        if missing:
            raise PolygonError(f"two-term indecomposables without an arc: {self.workbench.labels(missing)}")

    def fingerprint(self, x: Arc) -> Tuple[int, ...]:
        return tuple(hom_dim(r, x) for r in self.R)

    def realize(self, X: Iterable[Arc]) -> Subcat:
        """Workbench keys for arcs of ``X``; each must lie in R * R[1]."""
        out = []
        for x in X:
            if x not in self.key_of:
                raise PolygonError(f"arc {x} does not lie in R * R[1]")
            out.append(self.key_of[x])
        return canon(out)

    def arcs(self, keys: Iterable[Key]) -> Tuple[Arc, ...]:
        return tuple(sorted(self.arc_of[k] for k in keys))


def _shift_probe(wb: Workbench, U: TwoTermComplex, k: int) -> int:
    """``dim Hom_K(U, P_k[1])``."""
    return hom_k_shift1(U, wb.stalk(k)).dim


def arcs_text(arcs: Iterable[Arc]) -> str:
    return ",".join(str(a) for a in sorted(arcs))


def parse_arcs(text: str, m: int) -> Tuple[Arc, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(sorted(Arc.parse(t, m) for t in text.split(",")))
