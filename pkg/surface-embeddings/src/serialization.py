"""JSON documents for graphs and embedding schemes, plus DOT export.

A document is an object with ``vertices``, ``edges`` (``{"id", "ends"}`` records
with ids ``0..m-1``), ``loops_allowed`` and an optional ``embedding`` holding
``rotations`` (label to ``[[edge, end], ...]``) and ``signature`` (edge id to -1;
absent entries mean +1). Output is pretty-printed with sorted keys so that
re-serializing a parsed document reproduces it byte for byte.
"""

import json
import logging
import re
import sys
from pathlib import Path
from typing import Any

from .embedding import EmbeddingScheme, FaceSet
from .errors import InvalidScheme, ParseError, ValidationError
from .multigraph import Dart, Multigraph, build_graph

logger = logging.getLogger(__name__)

EDGE_KEY = re.compile(r"[0-9]+")


def dumps(data: Any) -> str:
    """Canonical JSON text: two-space indent, sorted keys, trailing newline."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# Emitting


def graph_to_json(g: Multigraph) -> dict[str, Any]:
    return {
        "vertices": list(g.labels),
        "edges": [
            {"id": e, "ends": [g.labels[u], g.labels[w]]} for e, (u, w) in enumerate(g.ends)
        ],
        "loops_allowed": g.loops_allowed,
    }


def scheme_to_json(s: EmbeddingScheme) -> dict[str, Any]:
    g = s.graph
    return {
        "rotations": {
            g.labels[v]: [d.to_json() for d in s.rotation[v]] for v in g.vertices
        },
        "signature": {str(e): -1 for e, sign in enumerate(s.signature) if sign < 0},
    }


def document(g: Multigraph, s: EmbeddingScheme | None = None) -> dict[str, Any]:
    data = graph_to_json(g)
    if s is not None:
        data["embedding"] = scheme_to_json(s)
    return data


def faces_to_json(g: Multigraph, faces: FaceSet) -> list[dict[str, Any]]:
    return [
        {
            "length": len(face),
            "vertices": [g.labels[v] for v in face.vertices(g)],
            "darts": [d.to_json() for d in face.darts],
            "signs": list(face.signs),
        }
        for face in faces
    ]


# Parsing


def _require(condition: bool, field: str, message: str) -> None:
    if not condition:
        raise ValidationError(f"{field}: {message}")


def _parse_dart(raw: Any, field: str) -> Dart:
    _require(
        isinstance(raw, list)
        and len(raw) == 2
        and all(isinstance(x, int) and not isinstance(x, bool) for x in raw),
        field,
        "expected [edgeId, end]",
    )
    _require(raw[1] in (0, 1), field, f"dart end must be 0 or 1, got {raw[1]}")
    return Dart(raw[0], raw[1])


def parse_graph(data: Any) -> Multigraph:
    """Validate the graph part of a document."""
    _require(isinstance(data, dict), "document", "expected a JSON object")
    vertices = data.get("vertices")
    _require(isinstance(vertices, list), "vertices", "expected a list of labels")
    for i, label in enumerate(vertices):
        _require(isinstance(label, str), f"vertices[{i}]", "labels must be strings")

    edges = data.get("edges", [])
    _require(isinstance(edges, list), "edges", "expected a list")
    by_id: dict[int, tuple[str, str]] = {}
    for i, edge in enumerate(edges):
        field = f"edges[{i}]"
        _require(isinstance(edge, dict), field, "expected an object with id and ends")
        e = edge.get("id")
        ends = edge.get("ends")
        _require(isinstance(e, int) and not isinstance(e, bool), f"{field}.id", "expected an integer")
        _require(e not in by_id, f"{field}.id", f"duplicate edge id {e}")
        _require(
            isinstance(ends, list) and len(ends) == 2 and all(isinstance(x, str) for x in ends),
            f"{field}.ends",
            "expected two vertex labels",
        )
        by_id[e] = (ends[0], ends[1])
    ids = sorted(by_id)
    _require(
        ids == list(range(len(ids))),
        "edges.id",
        f"edge ids must be 0..{len(ids) - 1} without gaps, got {ids}",
    )

    loops_allowed = data.get("loops_allowed", False)
    _require(isinstance(loops_allowed, bool), "loops_allowed", "expected a boolean")
    return build_graph(vertices, [by_id[e] for e in ids], loops_allowed)


def parse_scheme(g: Multigraph, data: Any) -> EmbeddingScheme:
    """Validate an ``embedding`` object against ``g``."""
    _require(isinstance(data, dict), "embedding", "expected an object")
    rotations = data.get("rotations")
    _require(isinstance(rotations, dict), "embedding.rotations", "expected an object")
    for label in rotations:
        _require(label in g.labels, f"embedding.rotations.{label}", "unknown vertex")

    rotation = []
    for v in g.vertices:
        label = g.labels[v]
        raw = rotations.get(label, [])
        field = f"embedding.rotations.{label}"
        _require(isinstance(raw, list), field, "expected a list of darts")
        rotation.append([_parse_dart(d, f"{field}[{i}]") for i, d in enumerate(raw)])

    raw_signature = data.get("signature", {})
    _require(isinstance(raw_signature, dict), "embedding.signature", "expected an object")
    signature = [1] * g.m
    for key, value in raw_signature.items():
        field = f"embedding.signature.{key}"
        _require(
            isinstance(key, str) and EDGE_KEY.fullmatch(key) is not None and int(key) < g.m,
            field,
            "unknown edge id",
        )
        _require(value in (1, -1) and not isinstance(value, bool), field, "expected +1 or -1")
        signature[int(key)] = value

    try:
        return EmbeddingScheme(g, rotation, signature)
    except InvalidScheme as e:
        raise ValidationError(f"embedding: {e}") from e


def parse_document(data: Any) -> tuple[Multigraph, EmbeddingScheme | None]:
    g = parse_graph(data)
    if "embedding" not in data:
        return g, None
    return g, parse_scheme(g, data["embedding"])


def load_json(path: str | Path | None) -> Any:
    """Read JSON from a file, or from standard input when ``path`` is None or ``-``.

    Raises:
        ParseError: unreadable file or malformed JSON (with line and column)
    """
    source = "<stdin>" if path in (None, "-") else str(path)
    try:
        if source == "<stdin>":
            text = sys.stdin.read()
        else:
            text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"{source}: input is not valid UTF-8: {e.reason} at byte {e.start}") from e
    except OSError as e:
        raise ParseError(f"{source}: cannot read input: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}:{e.lineno}:{e.colno}: {e.msg}") from e
    except (ValueError, RecursionError) as e:
        # oversized integer literals, nesting deeper than the decoder allows
        raise ParseError(f"{source}: {e}") from e


def parse_input(path: str | Path | None = None) -> tuple[Multigraph, EmbeddingScheme | None]:
    """Load and validate a graph document, with its scheme if present."""
    return parse_document(load_json(path))


def write_output(data: Any, path: str | Path | None = None) -> None:
    text = dumps(data)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")
        logger.debug(f"Wrote {path}")


# DOT


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Multigraph, s: EmbeddingScheme | None = None, name: str = "G") -> str:
    """Graphviz source; parallel edges and loops are drawn as separate labelled lines,
    and each vertex rotation is listed in a comment."""
    lines = [f"graph {_quote(name)} {{"]
    if s is not None:
        for v in g.vertices:
            darts = " ".join(f"e{d.edge}.{d.end}" for d in s.rotation[v])
            lines.append(f"  // rotation {g.labels[v]}: {darts}")
    for v in g.vertices:
        lines.append(f"  {_quote(g.labels[v])};")
    for e, (u, w) in enumerate(g.ends):
        attrs = [f'label="e{e}"']
        if u == w:
            attrs.append("style=dashed")
        elif g.multiplicity(u, w) > 1:
            attrs.append("color=blue")
        if s is not None and s.sign(e) < 0:
            attrs.append("penwidth=2")
        lines.append(f"  {_quote(g.labels[u])} -- {_quote(g.labels[w])} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
