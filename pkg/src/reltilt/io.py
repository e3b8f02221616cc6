"""File formats: algebras (TOML or JSON), subcategories, reports and DOT.

An algebra file looks like::

    prime = 32003            # optional
    vertices = [1, 2, 3]
    arrows = [
        {id = "a", from = 1, to = 2},
        {id = "b", from = 2, to = 3},
    ]
    # each relation is a list of terms {coeff, path}
    relations = [[{coeff = 1, path = ["a", "b"]}]]

Instead of a file, the built-in names ``A<n>`` (linear A_n) and
``A<n>r<k>`` (linear A_n with paths of length k set to zero) are accepted
wherever an algebra is expected.
"""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

import numpy as np
import tomli

from .algebra import AlgebraError, BoundQuiverAlgebra, build_algebra, linear_a
from .completion import ExchangeGraph, Key, Subcat, Workbench, canon
from .modules import Representation
from .twoterm import TwoTermComplex

SCHEMA = 1
_BUILTIN = re.compile(r"^A(\d+)(?:r(\d+))?$")


class InputError(ValueError):
    """Malformed input file or argument."""


def algebra_from_dict(data: dict, prime: Optional[int] = None) -> BoundQuiverAlgebra:
    """Build an algebra from the dictionary form of an algebra file."""
    try:
        vertices = list(data["vertices"])
        arrows = [(a["id"], a["from"], a["to"]) for a in data.get("arrows", [])]
        relations = [[(int(t["coeff"]), list(t["path"])) for t in rel] for rel in data.get("relations", [])]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed algebra description: missing or invalid field {exc}") from None
    p = data.get("prime", prime)
    return build_algebra(vertices, arrows, relations, prime=p)


def load_algebra(source: str, prime: Optional[int] = None) -> BoundQuiverAlgebra:
    """Load an algebra from a TOML/JSON path or a built-in name such as ``A3`` or ``A4r3``.

    Raises:
        InputError: unreadable or malformed input.
        AlgebraError: relations rejected (non-confluent, not admissible, too large).
    """
    m = _BUILTIN.match(source)
    if m and not Path(source).exists():
        n = int(m.group(1))
        k = int(m.group(2)) if m.group(2) else None
        if n < 1 or (k is not None and k < 2):
            raise InputError(f"bad built-in algebra name {source!r}")
        return linear_a(n, k, prime=prime)
    path = Path(source)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    try:
        if path.suffix.lower() == ".json":
            data = json.loads(raw)
        else:
            data = tomli.loads(raw.decode())
    except (ValueError, tomli.TOMLDecodeError) as exc:
        raise InputError(f"cannot parse {source}: {exc}") from None
    return algebra_from_dict(data, prime=prime)


def dump_algebra(alg: BoundQuiverAlgebra, fmt: str = "json") -> str:
    """Serialize ``alg`` as JSON or TOML (the TOML writer covers the algebra format only)."""
    d = alg.to_dict()
    if fmt == "json":
        return json.dumps(d, indent=2, sort_keys=True) + "\n"
    lines = [f"prime = {d['prime']}", f"vertices = {json.dumps(d['vertices'])}", "arrows = ["]
    for a in d["arrows"]:
        lines.append(f"    {{id = {json.dumps(a['id'])}, from = {json.dumps(a['from'])}, to = {json.dumps(a['to'])}}},")
    lines.append("]")
    lines.append("relations = [")
    for rel in d["relations"]:
        terms = ", ".join(f"{{coeff = {t['coeff']}, path = {json.dumps(t['path'])}}}" for t in rel)
        lines.append(f"    [{terms}],")
    lines.append("]")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# modules and complexes


def representation_to_dict(M: Representation) -> dict:
    return {"dims": list(M.dims), "maps": {a: m.tolist() for a, m in sorted(M.maps.items())}}


def representation_from_dict(alg: BoundQuiverAlgebra, data: dict) -> Representation:
    try:
        return Representation(alg, data["dims"], data.get("maps", {}))
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"malformed representation: {exc}") from None


def complex_to_dict(C: TwoTermComplex) -> dict:
    return {"p1": list(C.p1), "p0": list(C.p0), "d": C.d.tolist()}


def complex_from_dict(alg: BoundQuiverAlgebra, data: dict) -> TwoTermComplex:
    try:
        p1, p0 = tuple(data["p1"]), tuple(data["p0"])
        d = np.array(data.get("d", []), dtype=np.int64).reshape(len(p0), len(p1), alg.dim)
        return TwoTermComplex(alg, p1, p0, d)
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"malformed two-term complex: {exc}") from None


# ----------------------------------------------------------------------
# subcategories


def parse_subcategory(wb: Workbench, data) -> Subcat:
    """Keys for a subcategory given as JSON data.

    Accepted forms: a list whose entries are labels (``"P2[1]"``, ``"P1"``,
    ``"M(011)"`` or ``"M011"``), two-term complex dictionaries, or
    ``[kind, index]`` key pairs; or a dictionary ``{"objects": [...]}``.
    """
    if isinstance(data, dict):
        data = data.get("objects", data.get("keys", []))
    if isinstance(data, str):
        data = [t for t in data.split(",") if t.strip()]
    out: List[Key] = []
    labels = {wb.label(k): k for k in wb.all_keys()}
    for k in wb.all_keys():
        if k[0] == "mod":
            labels.setdefault("M" + "".join(str(d) for d in wb.atlas.modules[k[1]].dims), k)
    for item in data:
        if isinstance(item, str):
            name = item.strip()
            if name not in labels:
                raise InputError(f"unknown object {name!r}; known: {', '.join(sorted(labels))}")
            out.append(labels[name])
        elif isinstance(item, dict):
            out.extend(wb.keys_of(complex_from_dict(wb.algebra, item)))
        elif isinstance(item, (list, tuple)) and len(item) == 2 and item[0] in ("mod", "shift"):
            out.append((item[0], int(item[1])))
        else:
            raise InputError(f"cannot interpret subcategory entry {item!r}")
    return canon(out)


def load_subcategory(wb: Workbench, source: str) -> Subcat:
    """Subcategory from a JSON file, or an inline comma-separated label list."""
    path = Path(source)
    if path.suffix.lower() == ".json" and path.exists():
        try:
            data = json.loads(path.read_text())
        except ValueError as exc:
            raise InputError(f"cannot parse {source}: {exc}") from None
    else:
        data = source
    return parse_subcategory(wb, data)


def subcategory_to_dict(wb: Workbench, X: Iterable[Key]) -> dict:
    X = canon(X)
    return {
        "labels": wb.labels(X),
        "keys": [[k, i] for k, i in X],
        "complexes": [complex_to_dict(wb.obj(k)) for k in X],
    }


# ----------------------------------------------------------------------
# reports and DOT


def report_json(payload: dict) -> str:
    body = {"schema": SCHEMA}
    body.update(payload)
    return json.dumps(body, indent=2, sort_keys=True, default=_jsonable) + "\n"


def _jsonable(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (set, frozenset, tuple)):
        return sorted(obj) if isinstance(obj, (set, frozenset)) else list(obj)
    return str(obj)


def emit_dot(graph: Optional[ExchangeGraph], names: Optional[Sequence[str]] = None, title: str = "exchange") -> str:
    """Deterministic DOT text for an exchange graph.

    Vertices appear in the canonical order of the graph; each edge runs from
    ``M_X`` to ``N_X`` and is labelled with the side that ``N_X`` is on
    relative to ``M_X`` (``N_X`` is the Bongartz side, ``M_X`` the co-Bongartz
    side), so the arrow points up in the partial order.

    Args:
        graph: The exchange graph; ``None`` gives an empty graph.
        names: Optional vertex labels (defaults to ``v<i>``).
        title: Graph name.
    """
    lines = [f"digraph {json.dumps(title)} {{", "  node [shape=box];"]
    if graph is not None:
        for i, _ in enumerate(graph.vertices):
            label = names[i] if names else f"v{i}"
            lines.append(f"  v{i} [label={json.dumps(label)}];")
        for m, n, _ in graph.edges:
            lines.append(f'  v{m} -> v{n} [label="Bongartz-side", taillabel="co-Bongartz-side"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dict(wb: Workbench, graph: ExchangeGraph, names: Optional[Sequence[str]] = None) -> dict:
    return {
        "complete": graph.complete,
        "vertices": [
            {"index": i, "labels": wb.labels(U), "keys": [[k, j] for k, j in U], "name": names[i] if names else None}
            for i, U in enumerate(graph.vertices)
        ],
        "edges": [{"m": m, "n": n, "x": wb.labels(X)} for m, n, X in graph.edges],
    }


__all__ = [
    "AlgebraError",
    "InputError",
    "algebra_from_dict",
    "complex_from_dict",
    "complex_to_dict",
    "dump_algebra",
    "emit_dot",
    "graph_to_dict",
    "load_algebra",
    "load_subcategory",
    "parse_subcategory",
    "report_json",
    "representation_from_dict",
    "representation_to_dict",
    "subcategory_to_dict",
]
