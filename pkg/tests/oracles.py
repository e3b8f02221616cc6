"""Independent brute-force oracles used by the test suite.

Nothing here imports the package under test.  The module-theoretic oracles
work for linearly oriented A_n with all paths of length ``k`` set to zero
(``k = None`` meaning no relations).  Every indecomposable module of such an
algebra is an interval module ``[a, b]`` (dimension one at each vertex of
``a..b``) of length at most ``k``, and all the invariants needed below have
closed interval formulas.
"""

from __future__ import annotations

import itertools
import math
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

Interval = Tuple[int, int]


# ----------------------------------------------------------------------
# linear algebra over tiny prime fields, by enumeration


def span_size(rows: np.ndarray, p: int) -> int:
    """Number of distinct vectors in the row space of ``rows`` (enumerated)."""
    rows = np.asarray(rows, dtype=np.int64) % p
    if rows.size == 0:
        return 1
    seen = set()
    for coeffs in itertools.product(range(p), repeat=rows.shape[0]):
        seen.add(tuple((np.array(coeffs, dtype=np.int64) @ rows) % p))
    return len(seen)


def brute_rank(rows: np.ndarray, p: int) -> int:
    return round(math.log(span_size(rows, p), p))


def brute_kernel(a: np.ndarray, p: int) -> List[Tuple[int, ...]]:
    """All vectors ``v`` with ``a @ v = 0`` over F_p."""
    a = np.asarray(a, dtype=np.int64)
    return [v for v in itertools.product(range(p), repeat=a.shape[1]) if not ((a @ np.array(v)) % p).any()]


def gaussian_binomial(n: int, k: int, p: int) -> int:
    """Number of ``k``-dimensional subspaces of F_p^n."""
    num, den = 1, 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


# ----------------------------------------------------------------------
# path algebras with monomial relations


def count_paths(n_vertices: int, arrows: Sequence[Tuple[str, int, int]], zero_words: Iterable[Sequence[str]],
                max_len: int = 12) -> int:
    """Number of paths (vertices included) containing no zero word as a factor."""
    zero = [tuple(w) for w in zero_words]
    out = n_vertices
    frontier = [(a,) for a in arrows]
    length = 1
    while frontier and length <= max_len:
        keep = []
        for path in frontier:
            ids = tuple(a[0] for a in path)
            if any(ids[i:i + len(z)] == z for z in zero for i in range(len(ids) - len(z) + 1)):
                continue
            keep.append(path)
        out += len(keep)
        frontier = [path + (b,) for path in keep for b in arrows if b[1] == path[-1][2]]
        length += 1
    if frontier:
        raise RuntimeError("path count did not stabilize; algebra looks infinite-dimensional")
    return out


# ----------------------------------------------------------------------
# interval modules over linear A_n with rad^k = 0


class LinearA:
    """Combinatorial model of mod of linear A_n truncated at path length ``k``."""

    def __init__(self, n: int, k: Optional[int] = None):
        self.n = n
        self.length = n if k is None else k

    # objects -----------------------------------------------------------

    def modules(self) -> List[Interval]:
        return [(a, b) for a in range(1, self.n + 1) for b in range(a, self.n + 1) if b - a + 1 <= self.length]

    def dims(self, M: Interval) -> Tuple[int, ...]:
        a, b = M
        return tuple(int(a <= v <= b) for v in range(1, self.n + 1))

    def projective(self, v: int) -> Interval:
        return (v, min(v + self.length - 1, self.n))

    def is_projective(self, M: Interval) -> bool:
        return M == self.projective(M[0])

    def syzygy(self, M: Interval) -> Optional[Interval]:
        a, b = M
        e = self.projective(a)[1]
        return (b + 1, e) if b < e else None

    def quotients(self, M: Interval) -> List[Interval]:
        a, b = M
        return [(a, e) for e in range(a, b + 1)]

    # invariants --------------------------------------------------------

    @staticmethod
    def hom(M: Optional[Interval], N: Optional[Interval]) -> int:
        """``dim Hom(M, N)``: an image ``[a, d]`` must be a quotient of M and a submodule of N."""
        if M is None or N is None:
            return 0
        a, b = M
        c, d = N
        return int(c <= a <= d <= b)

    def ext(self, M: Interval, N: Interval) -> int:
        """``dim Ext^1(M, N)`` from ``0 -> ΩM -> P_a -> M -> 0``."""
        return self.hom(self.syzygy(M), N) - self.dims(N)[M[0] - 1] + self.hom(M, N)

    def tau_hom(self, M: Interval, N: Interval) -> int:
        """``dim Hom(N, τM)`` from the minimal presentation ``P_{b+1} -> P_a -> M``."""
        if self.syzygy(M) is None:
            return 0
        return self.dims(N)[M[1]] - self.dims(N)[M[0] - 1] + self.hom(M, N)

    def extension_middle(self, A: Interval, C: Interval) -> List[Interval]:
        """Summands of the middle term of the non-split ``0 -> C -> E -> A -> 0``."""
        a, b = A
        c, d = C
        out = []
        if a <= d and d - a + 1 <= self.length:
            out.append((a, d))
        else:
            raise AssertionError(f"unexpected extension shape {A} by {C}")
        if c <= b:
            out.append((c, b))
        return out

    # torsion classes and support τ-tilting pairs -----------------------

    def is_torsion_class(self, T: FrozenSet[Interval]) -> bool:
        for M in T:
            if not set(self.quotients(M)) <= T:
                return False
        for A in T:
            for C in T:
                e = self.ext(A, C)
                if e > 1:
                    raise AssertionError("interval Ext dimension above 1")
                if e and not set(self.extension_middle(A, C)) <= T:
                    return False
        return True

    def torsion_classes(self) -> List[FrozenSet[Interval]]:
        mods = self.modules()
        out = []
        for r in range(len(mods) + 1):
            for T in itertools.combinations(mods, r):
                if self.is_torsion_class(frozenset(T)):
                    out.append(frozenset(T))
        return out

    def support_tau_tilting_pairs(self) -> Set[Tuple[FrozenSet[Interval], FrozenSet[int]]]:
        """Every ``(M, E)`` with M τ-rigid, ``Hom(P_E, M) = 0`` and ``|M| + |E| = n`` (full scan)."""
        mods = self.modules()
        out = set()
        for r in range(self.n + 1):
            for Ms in itertools.combinations(mods, r):
                if any(self.tau_hom(X, Y) for X in Ms for Y in Ms):
                    continue
                zero = [v for v in range(1, self.n + 1) if all(self.dims(X)[v - 1] == 0 for X in Ms)]
                for E in itertools.combinations(zero, self.n - r):
                    out.add((frozenset(Ms), frozenset(E)))
        return out

    def fac(self, S: Iterable[Interval]) -> FrozenSet[Interval]:
        """Indecomposables in Fac(add S): in type A these are the quotients of single summands."""
        return frozenset(Q for M in S for Q in self.quotients(M))


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def exchange_edges(pairs: Iterable[Tuple[FrozenSet, FrozenSet]]) -> Set[FrozenSet[int]]:
    """Pairs of support τ-tilting pairs differing in exactly one summand."""
    pairs = list(pairs)
    tagged = [frozenset({("m", x) for x in M} | {("e", v) for v in E}) for M, E in pairs]
    out = set()
    for i, j in itertools.combinations(range(len(pairs)), 2):
        if len(tagged[i] ^ tagged[j]) == 2:
            out.add(frozenset((i, j)))
    return out


# ----------------------------------------------------------------------
# polygon geometry with coordinates


def chords_cross(m: int, a: Tuple[int, int], b: Tuple[int, int]) -> bool:
    """Whether two chords of the regular ``m``-gon meet in the open disc (float geometry)."""
    def pt(k):
        t = 2 * math.pi * k / m
        return (math.cos(t), math.sin(t))

    if set(a) & set(b):
        return False
    p1, p2 = pt(a[0]), pt(a[1])
    q1, q2 = pt(b[0]), pt(b[1])

    def orient(u, v, w):
        return (v[0] - u[0]) * (w[1] - u[1]) - (v[1] - u[1]) * (w[0] - u[0])

    d1, d2 = orient(p1, p2, q1), orient(p1, p2, q2)
    d3, d4 = orient(q1, q2, p1), orient(q1, q2, p2)
    return d1 * d2 < 0 and d3 * d4 < 0


def diagonals(m: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(m) for j in range(i + 2, m) if not (i == 0 and j == m - 1)]


def polygon_triangulations(m: int) -> List[FrozenSet[Tuple[int, int]]]:
    """Triangulations by recursive ear splitting on the edge (0, m-1)."""
    def rec(verts: Tuple[int, ...]) -> List[FrozenSet[Tuple[int, int]]]:
        if len(verts) < 3:
            return [frozenset()]
        first, last = verts[0], verts[-1]
        out = []
        for k in range(1, len(verts) - 1):
            apex = verts[k]
            own = set()
            if k > 1:
                own.add((first, apex))
            if k < len(verts) - 2:
                own.add((apex, last))
            for left in rec(verts[: k + 1]):
                for right in rec(verts[k:]):
                    out.append(frozenset(own | left | right))
        return out

    return rec(tuple(range(m)))


def interval_table(model: LinearA) -> Dict[Tuple[int, ...], Interval]:
    return {model.dims(M): M for M in model.modules()}
