"""Bound quiver algebras kQ/I with a normal-form path basis.

Conventions used everywhere in the package:

* Paths compose left to right: the word ``(a, b)`` means "first ``a``, then
  ``b``", and is only defined when ``target(a) == source(b)``.
* Modules are right modules.  A representation stores, for an arrow
  ``a: i -> j``, a matrix of shape ``(dim M_i, dim M_j)`` and a vector
  ``m`` at vertex ``i`` is sent to ``m @ M_a``.
* The indecomposable projective ``P_v = e_v A`` has basis the normal-form
  paths starting at ``v``; ``Hom(P_v, P_w) = e_w A e_v`` acting by left
  multiplication.

Relations are turned into a rewriting system whose leading words are the
largest words under a degree-lexicographic order.  Confluence is checked
on overlap and inclusion ambiguities rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from . import field as F

Vertex = Hashable
Word = Tuple[str, ...]


class AlgebraError(ValueError):
    """Raised for malformed quivers or relation systems."""


class NonConfluentError(AlgebraError):
    pass


@dataclass(frozen=True)
class Arrow:
    id: str
    source: Vertex
    target: Vertex


class Path(NamedTuple):
    """A path in a quiver.  Trivial paths have an empty ``arrows`` tuple."""

    source: Vertex
    target: Vertex
    arrows: Word

    @property
    def length(self) -> int:
        return len(self.arrows)

    def label(self) -> str:
        if not self.arrows:
            return f"e{self.source}"
        return "*".join(self.arrows)


class Quiver:
    """A finite quiver.

    Args:
        vertices: Vertex identifiers (ints or strings), in a fixed order.
        arrows: Triples ``(id, source, target)`` or :class:`Arrow` values.
    """

    def __init__(self, vertices: Sequence[Vertex], arrows: Iterable = ()):
        self.vertices: Tuple[Vertex, ...] = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("vertex ids must be unique")
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        arrs = []
        for a in arrows:
            arr = a if isinstance(a, Arrow) else Arrow(str(a[0]), a[1], a[2])
            if arr.source not in self.vertex_index or arr.target not in self.vertex_index:
                raise AlgebraError(f"arrow {arr.id} has an unknown endpoint")
            arrs.append(arr)
        self.arrows: Tuple[Arrow, ...] = tuple(arrs)
        self.arrow_by_id = {a.id: a for a in self.arrows}
        if len(self.arrow_by_id) != len(self.arrows):
            raise AlgebraError("arrow ids must be unique")
        self.arrow_index = {a.id: i for i, a in enumerate(self.arrows)}

    def out_arrows(self, v: Vertex) -> List[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v: Vertex) -> List[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def path(self, arrows: Sequence[str], source: Optional[Vertex] = None) -> Path:
        """Build a :class:`Path` from arrow ids, checking composability."""
        arrows = tuple(arrows)
        if not arrows:
            if source is None:
                raise AlgebraError("a trivial path needs its vertex")
            return Path(source, source, ())
        for a in arrows:
            if a not in self.arrow_by_id:
                raise AlgebraError(f"unknown arrow {a!r}")
        for a, b in zip(arrows, arrows[1:]):
            if self.arrow_by_id[a].target != self.arrow_by_id[b].source:
                raise AlgebraError(f"arrows {a} and {b} are not composable")
        return Path(self.arrow_by_id[arrows[0]].source, self.arrow_by_id[arrows[-1]].target, arrows)

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [Arrow(a.id, a.target, a.source) for a in self.arrows])


Relation = Sequence[Tuple[int, Sequence[str]]]


class BoundQuiverAlgebra:
    """The algebra kQ/I over F_p presented by a quiver and relations.

    Args:
        quiver: The quiver Q.
        relations: Each relation is a list of ``(coeff, arrow ids)`` terms;
            all terms must be parallel paths of length at least two.
        prime: Field characteristic (session prime if omitted).
        reversed_order: Compare words by their reversals when choosing
            leading terms.  Used for opposite algebras so that their normal
            forms are exactly the reversed normal forms of the original.
        check_associativity: Verify the multiplication table on all basis
            triples when the dimension is at most 50.
    """

    def __init__(
        self,
        quiver: Quiver,
        relations: Iterable[Relation] = (),
        prime: Optional[int] = None,
        reversed_order: bool = False,
        check_associativity: bool = True,
    ):
        self.quiver = quiver
        self.p = F.get_prime() if prime is None else int(prime)
        if not F.is_prime(self.p):
            raise AlgebraError(f"{self.p} is not a prime")
        self.reversed_order = reversed_order
        self.relations: Tuple[Dict[Word, int], ...] = tuple(self._normalize(r) for r in relations)
        self.relations = tuple(r for r in self.relations if r)
        self._rules = self._make_rules()
        self._check_confluence()
        self.basis: Tuple[Path, ...] = self._enumerate_basis()
        self.dim = len(self.basis)
        if self.dim >= self.p:
            raise AlgebraError(f"algebra dimension {self.dim} is not below the prime {self.p}")
        self.index: Dict[Path, int] = {b: i for i, b in enumerate(self.basis)}
        nv = len(quiver.vertices)
        vi = quiver.vertex_index
        self.source_of = np.array([vi[b.source] for b in self.basis], dtype=np.int64)
        self.target_of = np.array([vi[b.target] for b in self.basis], dtype=np.int64)
        self.idempotent = {v: self.index[Path(v, v, ())] for v in quiver.vertices}
        self.arrow_element = {a.id: self.index[Path(a.source, a.target, (a.id,))] for a in quiver.arrows}
        self._between: Dict[Tuple[Vertex, Vertex], Tuple[int, ...]] = {}
        for u in quiver.vertices:
            for w in quiver.vertices:
                self._between[(u, w)] = tuple(
                    i for i in range(self.dim) if self.source_of[i] == vi[u] and self.target_of[i] == vi[w]
                )
        self.table = self._multiplication_table()
        if check_associativity and self.dim <= 50:
            self._check_associativity()
        self._opposite: Optional[BoundQuiverAlgebra] = None
        self.num_vertices = nv

    # ------------------------------------------------------------------
    # rewriting system
    def _order_key(self, word: Word):
        idx = [self.quiver.arrow_index[a] for a in word]
        if self.reversed_order:
            idx.reverse()
        return (len(word), tuple(idx))

    def _normalize(self, relation: Relation) -> Dict[Word, int]:
        terms: Dict[Word, int] = {}
        ends = set()
        for coeff, arrows in relation:
            path = self.quiver.path(arrows)
            if path.length < 2:
                raise AlgebraError(f"relation term {path.label()} has length < 2")
            ends.add((path.source, path.target))
            terms[path.arrows] = (terms.get(path.arrows, 0) + int(coeff)) % self.p
        if len(ends) > 1:
            raise AlgebraError("relation terms are not parallel paths")
        return {w: c for w, c in terms.items() if c}

    def _make_rules(self) -> Dict[Word, Dict[Word, int]]:
        rules: Dict[Word, Dict[Word, int]] = {}
        for rel in self.relations:
            lead = max(rel, key=self._order_key)
            scale = (-F.inv_scalar(rel[lead], self.p)) % self.p
            tail = {w: (c * scale) % self.p for w, c in rel.items() if w != lead}
            if lead in rules:
                if rules[lead] != tail:
                    raise NonConfluentError(
                        "relations not confluent; supply a completed reduction system "
                        f"(two relations share the leading word {'*'.join(lead)})"
                    )
                continue
            rules[lead] = tail
        self._lead_lengths = sorted({len(w) for w in rules})
        return rules

    def _find_redex(self, word: Word) -> Optional[Tuple[int, Word]]:
        for length in self._lead_lengths:
            for start in range(len(word) - length + 1):
                sub = word[start : start + length]
                if sub in self._rules:
                    return start, sub
        return None

    def _reduce_words(self, combo: Mapping[Word, int]) -> Dict[Word, int]:
        """Fully reduce a linear combination of (nontrivial) words."""
        p = self.p
        pending = {w: c % p for w, c in combo.items() if c % p}
        out: Dict[Word, int] = {}
        while pending:
            word = max(pending, key=self._order_key)
            coeff = pending.pop(word)
            if coeff == 0:
                continue
            hit = self._find_redex(word)
            if hit is None:
                out[word] = (out.get(word, 0) + coeff) % p
                continue
            start, lead = hit
            prefix, suffix = word[:start], word[start + len(lead) :]
            for tail, c in self._rules[lead].items():
                w2 = prefix + tail + suffix
                pending[w2] = (pending.get(w2, 0) + coeff * c) % p
        return {w: c for w, c in out.items() if c}

    def _check_confluence(self) -> None:
        leads = list(self._rules)
        for l1 in leads:
            for l2 in leads:
                # overlaps: a proper suffix of l1 equals a proper prefix of l2
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] == l2[:k]:
                        word = l1 + l2[k:]
                        via1 = {t + l2[k:]: c for t, c in self._rules[l1].items()}
                        via2 = {l1[:-k] + t: c for t, c in self._rules[l2].items()}
                        self._compare_resolutions(word, via1, via2)
                # inclusions: l2 occurs strictly inside l1
                if l1 != l2 and len(l2) < len(l1):
                    for s in range(len(l1) - len(l2) + 1):
                        if l1[s : s + len(l2)] == l2:
                            via1 = dict(self._rules[l1])
                            via2 = {l1[:s] + t + l1[s + len(l2) :]: c for t, c in self._rules[l2].items()}
                            self._compare_resolutions(l1, via1, via2)

    def _compare_resolutions(self, word: Word, via1, via2) -> None:
        if self._reduce_words(via1) != self._reduce_words(via2):
            raise NonConfluentError(
                "relations not confluent; supply a completed reduction system "
                f"(ambiguity at {'*'.join(word)})"
            )

    # ------------------------------------------------------------------
    # basis and multiplication
    def _is_irreducible_extension(self, word: Word) -> bool:
        # ``word[:-1]`` is irreducible, so only suffixes can contain a redex.
        for length in self._lead_lengths:
            if length <= len(word) and word[-length:] in self._rules:
                return False
        return True

    def _enumerate_basis(self) -> Tuple[Path, ...]:
        q = self.quiver
        m = max(self._lead_lengths) if self._lead_lengths else 1
        level = [Path(v, v, ()) for v in q.vertices]
        basis = list(level)
        cap = None
        depth = 0
        while level:
            if depth == m - 1:
                # Automaton bound: an irreducible path of length >= states + m
                # can be pumped, so the irreducible set would be infinite.
                cap = len(level) + m
            if cap is not None and depth >= cap:
                raise AlgebraError(
                    f"relations are not admissible: irreducible paths of length {depth} exist "
                    f"(finite algebras have none beyond length {cap - 1})"
                )
            nxt = []
            for path in level:
                for a in q.out_arrows(path.target):
                    word = path.arrows + (a.id,)
                    if self._is_irreducible_extension(word):
                        nxt.append(Path(path.source, a.target, word))
            basis.extend(nxt)
            if len(basis) >= self.p:
                raise AlgebraError(f"algebra dimension reaches the prime {self.p}")
            level = nxt
            depth += 1
        return tuple(basis)

    def _multiplication_table(self) -> np.ndarray:
        n = self.dim
        table = np.zeros((n, n, n), dtype=np.int64)
        for i, x in enumerate(self.basis):
            for j, y in enumerate(self.basis):
                if x.target != y.source:
                    continue
                if not x.arrows:
                    table[i, j, j] = 1
                elif not y.arrows:
                    table[i, j, i] = 1
                else:
                    for w, c in self._reduce_words({x.arrows + y.arrows: 1}).items():
                        table[i, j, self.index[self.quiver.path(w)]] = c
        return table

    def _check_associativity(self) -> None:
        n, p = self.dim, self.p
        t = self.table
        flat = t.reshape(n * n, n)
        # ((b_i b_j) b_l)_m and (b_i (b_j b_l))_m
        left = (flat @ t.reshape(n, n * n)) % p  # (ij, l m)
        left = left.reshape(n, n, n, n)
        right = np.einsum("jlk,ikm->ijlm", t, t) % p
        if not np.array_equal(left, right):
            raise AlgebraError("multiplication table is not associative")

    # ------------------------------------------------------------------
    # public API
    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return self.quiver.vertices

    def paths_between(self, u: Vertex, w: Vertex) -> Tuple[int, ...]:
        """Indices of basis paths from ``u`` to ``w`` (a basis of e_u A e_w)."""
        return self._between[(u, w)]

    def paths_from(self, u: Vertex) -> Tuple[int, ...]:
        return tuple(i for w in self.vertices for i in self._between[(u, w)])

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def basis_element(self, i: int) -> np.ndarray:
        e = self.zero()
        e[i] = 1
        return e

    def element(self, terms: Mapping) -> np.ndarray:
        """Build an element from ``{path or arrow-word: coeff}``.

        Keys may be :class:`Path` values, tuples of arrow ids, or vertex ids
        (meaning the trivial path).  Reducible words are normalized.
        """
        out = self.zero()
        words: Dict[Word, int] = {}
        for key, c in terms.items():
            if isinstance(key, Path):
                path = key
            elif key in self.quiver.vertex_index and not isinstance(key, tuple):
                path = Path(key, key, ())
            else:
                path = self.quiver.path(tuple(key))
            if path.arrows and path not in self.index:
                words[path.arrows] = words.get(path.arrows, 0) + c
            else:
                out[self.index[path]] += c
        for w, c in self._reduce_words(words).items():
            out[self.index[self.quiver.path(w)]] += c
        return out % self.p

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Product ``x * y`` ("x then y") of two algebra elements."""
        n, p = self.dim, self.p
        xt = (np.asarray(x, dtype=np.int64) @ self.table.reshape(n, n * n)) % p
        return (np.asarray(y, dtype=np.int64) @ xt.reshape(n, n)) % p

    def format_element(self, x: np.ndarray) -> str:
        terms = []
        for i in np.nonzero(x)[0]:
            c = int(x[i])
            lab = self.basis[i].label()
            terms.append(lab if c == 1 else f"{c}*{lab}")
        return " + ".join(terms) if terms else "0"

    def opposite(self) -> "BoundQuiverAlgebra":
        """The opposite algebra on the reversed quiver (cached).

        Basis path ``b`` of ``A`` corresponds to the reversed word in
        ``A^op``; :meth:`op_index` gives the index map.
        """
        if self._opposite is None:
            rels = [[(c, tuple(reversed(w))) for w, c in rel.items()] for rel in self.relations]
            op = BoundQuiverAlgebra(
                self.quiver.opposite(), rels, prime=self.p, reversed_order=not self.reversed_order
            )
            op._opposite = self
            self._opposite = op
        return self._opposite

    def op_index(self) -> np.ndarray:
        """``perm[i]`` = index in ``A^op`` of the reversal of basis path ``i``."""
        op = self.opposite()
        perm = np.empty(self.dim, dtype=np.int64)
        for i, b in enumerate(self.basis):
            perm[i] = op.index[Path(b.target, b.source, tuple(reversed(b.arrows)))]
        return perm

    def to_op(self, x: np.ndarray) -> np.ndarray:
        """The element of ``A^op`` corresponding to ``x``."""
        out = np.zeros(self.dim, dtype=np.int64)
        out[self.op_index()] = x
        return out

    def projective_dim_vector(self, v: Vertex) -> Tuple[int, ...]:
        return tuple(len(self._between[(v, w)]) for w in self.vertices)

    def indecomposable_projective(self, v: Vertex):
        """The right module P_v = e_v A as a representation."""
        from .modules import projective_module

        if v not in self.quiver.vertex_index:
            raise AlgebraError(f"unknown vertex {v!r}")
        return projective_module(self, (v,))

    def is_hereditary_path_algebra(self) -> bool:
        return not self.relations

    def to_dict(self) -> dict:
        """Serializable description (the algebra file format)."""
        rels = []
        for rel in self.relations:
            rels.append([{"coeff": int(c), "path": list(w)} for w, c in sorted(rel.items(), key=lambda t: self._order_key(t[0]))])
        return {
            "vertices": list(self.vertices),
            "arrows": [{"id": a.id, "from": a.source, "to": a.target} for a in self.quiver.arrows],
            "relations": rels,
            "prime": self.p,
        }

    def __repr__(self) -> str:
        return f"BoundQuiverAlgebra(vertices={list(self.vertices)}, arrows={len(self.quiver.arrows)}, dim={self.dim})"


def build_algebra(
    vertices: Sequence[Vertex],
    arrows: Iterable,
    relations: Iterable[Relation] = (),
    prime: Optional[int] = None,
) -> BoundQuiverAlgebra:
    """Convenience constructor from plain data.

    Args:
        vertices: Vertex ids.
        arrows: ``(id, source, target)`` triples.
        relations: Lists of ``(coeff, arrow ids)`` terms.
        prime: Optional field characteristic.
    """
    return BoundQuiverAlgebra(Quiver(vertices, arrows), relations, prime=prime)


def linear_a(n: int, truncate: Optional[int] = None, prime: Optional[int] = None) -> BoundQuiverAlgebra:
    """Linearly oriented A_n: ``1 -> 2 -> ... -> n`` with arrows ``x1, x2, ...``.

    Args:
        n: Number of vertices.
        truncate: If given, all paths of this length are set to zero.
    """
    arrows = [(f"x{i}", i, i + 1) for i in range(1, n)]
    rels = []
    if truncate is not None:
        for i in range(1, n - truncate + 1):
            rels.append([(1, [f"x{j}" for j in range(i, i + truncate)])])
    return build_algebra(list(range(1, n + 1)), arrows, rels, prime=prime)
