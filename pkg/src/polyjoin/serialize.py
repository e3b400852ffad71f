"""JSON and CSV forms of complexes, pairs, chain complexes and rank tables.

Complex schema::

    {"universe": [...], "blocks": [[...], ...]?, "void": bool, "facets": [[...], ...]}

``"void": true`` requires no facets; ``"facets": [[]]`` is {emptyset}. Tuple
vertices (staircase products) are written as JSON lists and read back as tuples.
"""
from __future__ import annotations

import csv
import io
import json
from typing import Any

from .complex import GroundSet, SimplicialComplex, SimplicialPair
from .errors import InvalidInputError


def _vertex_out(v):
    if isinstance(v, tuple):
        return [_vertex_out(x) for x in v]
    return v


def _vertex_in(v):
    if isinstance(v, list):
        return tuple(_vertex_in(x) for x in v)
    if isinstance(v, (int, str)) and not isinstance(v, bool):
        return v
    raise InvalidInputError(f"vertex ids must be ints, strings or lists of them, got {v!r}")


def complex_to_json(K: SimplicialComplex) -> dict[str, Any]:
    out: dict[str, Any] = {"universe": [_vertex_out(v) for v in K.ground.universe]}
    if K.ground.blocks is not None:
        out["blocks"] = [[_vertex_out(v) for v in b] for b in K.ground.blocks]
    out["void"] = K.is_void
    out["facets"] = [[_vertex_out(v) for v in f] for f in K.facet_vertices()]
    return out


def complex_from_json(data: Any) -> SimplicialComplex:
    if not isinstance(data, dict):
        raise InvalidInputError("a complex must be a JSON object")
    for key in ("universe", "void", "facets"):
        if key not in data:
            raise InvalidInputError(f"complex is missing the {key!r} field")
    unknown = set(data) - {"universe", "blocks", "void", "facets"}
    if unknown:
        raise InvalidInputError(f"unknown complex fields: {sorted(unknown)}")
    if not isinstance(data["universe"], list) or not isinstance(data["facets"], list):
        raise InvalidInputError("'universe' and 'facets' must be lists")
    if not isinstance(data["void"], bool):
        raise InvalidInputError("'void' must be a boolean")
    universe = tuple(_vertex_in(v) for v in data["universe"])
    blocks = data.get("blocks")
    if blocks is not None:
        if not isinstance(blocks, list) or not all(isinstance(b, list) for b in blocks):
            raise InvalidInputError("'blocks' must be a list of lists")
        blocks = tuple(tuple(_vertex_in(v) for v in b) for b in blocks)
    ground = GroundSet(universe, blocks)
    facets = data["facets"]
    if data["void"]:
        if facets:
            raise InvalidInputError("a void complex cannot list facets")
        return SimplicialComplex(ground, [], check=False)
    if not facets:
        raise InvalidInputError("a non-void complex needs facets; use [[]] for {emptyset}")
    if not all(isinstance(f, list) for f in facets):
        raise InvalidInputError("each facet must be a list of vertices")
    return SimplicialComplex.from_facets(ground, [[_vertex_in(v) for v in f] for f in facets])


def pair_to_json(P: SimplicialPair) -> dict[str, Any]:
    return {"total": complex_to_json(P.total), "sub": complex_to_json(P.sub)}


def pair_from_json(data: Any) -> SimplicialPair:
    if not isinstance(data, dict) or "total" not in data or "sub" not in data:
        raise InvalidInputError("a simplicial pair is an object with 'total' and 'sub'")
    return SimplicialPair(complex_from_json(data["total"]), complex_from_json(data["sub"]))


def dumps(obj: Any, **kw) -> str:
    return json.dumps(obj, sort_keys=False, **kw)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"malformed JSON: {e}") from None


def set_label(vertices) -> str:
    """Sorted hyphen-joined ids; the empty set is the empty string."""
    return "-".join(str(v) for v in sorted(vertices, key=lambda x: (str(type(x)), x)))


def table_rows(table) -> list[dict[str, Any]]:
    """Flatten a sigma-omega table into CSV-ready rows (one per nonzero degree)."""
    rows = []
    order = sorted(table.items(), key=lambda item: (len(item[0].sigma) + len(item[0].omega),
                                                    set_label(item[0].sigma), set_label(item[0].omega)))
    for pair, ranks in order:
        degrees = sorted(set(ranks.betti) | set(ranks.torsion))
        for d in degrees:
            rows.append({
                "sigma": set_label(pair.sigma),
                "omega": set_label(pair.omega),
                "degree": d,
                "rank": ranks.betti.get(d, 0),
                "torsion": " ".join(map(str, ranks.torsion.get(d, []))),
            })
    return rows


def rows_to_csv(rows: list[dict[str, Any]], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()
