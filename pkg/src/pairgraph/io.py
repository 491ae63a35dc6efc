"""Reading, writing, and exporting graphs.

The on-disk document is plain JSON referring to vertices by label, never by
index, so files stay meaningful when edited by hand. Edge ids are not
stored; readers assign them 0..m-1 in list order, which keeps a write/read
cycle the identity.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping

from .errors import DocumentError
from .graphs import Edge, ExperimentGraph

__all__ = [
    "SCHEMA_VERSION",
    "EDGE_PALETTE",
    "graph_to_document",
    "document_to_graph",
    "graph_to_json",
    "graph_from_json",
    "write_graph",
    "read_graph",
    "export_dot",
    "export_experiment",
]

SCHEMA_VERSION = 1

# Mode numbers drawn in figures and DOT output cycle through this palette.
EDGE_PALETTE = ("black", "red", "green", "blue", "orange", "purple", "brown", "cyan")

_EDGE_FIELDS = ("u", "v", "color_u", "color_v", "weight")


def graph_to_document(graph: ExperimentGraph) -> dict:
    """Plain-data form of the graph, stable under json round-trips."""
    return {
        "schema_version": SCHEMA_VERSION,
        "vertices": list(graph.vertex_labels),
        "edges": [
            {
                "u": graph.vertex_labels[e.u],
                "v": graph.vertex_labels[e.v],
                "color_u": e.color_u,
                "color_v": e.color_v,
                "weight": {"re": float(e.weight.real), "im": float(e.weight.imag)},
            }
            for e in graph.edges
        ],
    }


def _fail(path: str, problem: str) -> None:
    raise DocumentError(f"{path}: {problem}")


def _want_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(path, f"expected an integer, got {value!r}")
    return value


def _want_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(path, f"expected a number, got {value!r}")
    return float(value)


def document_to_graph(doc: object) -> ExperimentGraph:
    """Validate a parsed document and build the graph it describes.

    Every complaint names the offending field by path, e.g. 'edges[3].color_u'.
    """
    if not isinstance(doc, Mapping):
        _fail("document", "expected a JSON object at the top level")
    unknown = set(doc) - {"schema_version", "vertices", "edges"}
    if unknown:
        _fail("document", f"unknown field {sorted(unknown)[0]!r}")
    for field in ("schema_version", "vertices", "edges"):
        if field not in doc:
            _fail(field, "missing required field")

    version = _want_int(doc["schema_version"], "schema_version")
    if version != SCHEMA_VERSION:
        _fail("schema_version", f"unsupported value {version} (this reader handles {SCHEMA_VERSION})")

    vertices = doc["vertices"]
    if not isinstance(vertices, list) or not vertices:
        _fail("vertices", "expected a non-empty list of labels")
    seen: set[str] = set()
    for i, lab in enumerate(vertices):
        if not isinstance(lab, str) or not lab:
            _fail(f"vertices[{i}]", f"expected a non-empty string, got {lab!r}")
        if lab in seen:
            _fail(f"vertices[{i}]", f"duplicate label {lab!r}")
        seen.add(lab)
    index = {lab: i for i, lab in enumerate(vertices)}

    raw_edges = doc["edges"]
    if not isinstance(raw_edges, list):
        _fail("edges", "expected a list")
    edges = []
    for i, entry in enumerate(raw_edges):
        where = f"edges[{i}]"
        if not isinstance(entry, Mapping):
            _fail(where, "expected an object")
        for key in entry:
            if key not in _EDGE_FIELDS:
                _fail(where, f"unknown field {key!r}")
        for key in _EDGE_FIELDS:
            if key not in entry:
                _fail(f"{where}.{key}", "missing required field")
        endpoints = []
        for key in ("u", "v"):
            lab = entry[key]
            if not isinstance(lab, str):
                _fail(f"{where}.{key}", f"expected a vertex label, got {lab!r}")
            if lab not in index:
                _fail(f"{where}.{key}", f"unknown vertex {lab!r}")
            endpoints.append(index[lab])
        colors = []
        for key in ("color_u", "color_v"):
            mode = _want_int(entry[key], f"{where}.{key}")
            if mode < 0:
                _fail(f"{where}.{key}", f"mode numbers are non-negative, got {mode}")
            colors.append(mode)
        raw_w = entry["weight"]
        if not isinstance(raw_w, Mapping) or set(raw_w) != {"re", "im"}:
            _fail(f"{where}.weight", "expected an object with fields 're' and 'im'")
        weight = complex(
            _want_number(raw_w["re"], f"{where}.weight.re"),
            _want_number(raw_w["im"], f"{where}.weight.im"),
        )
        edges.append(Edge(i, endpoints[0], endpoints[1], colors[0], colors[1], weight))

    try:
        return ExperimentGraph(vertex_labels=tuple(vertices), edges=tuple(edges))
    except ValueError as exc:
        raise DocumentError(f"edges: {exc}") from exc


def graph_to_json(graph: ExperimentGraph) -> str:
    return json.dumps(graph_to_document(graph), indent=2) + "\n"


def graph_from_json(text: str) -> ExperimentGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"document: invalid JSON ({exc})") from exc
    return document_to_graph(doc)


def write_graph(graph: ExperimentGraph, path: str | Path) -> None:
    Path(path).write_text(graph_to_json(graph), encoding="utf-8")


def read_graph(path: str | Path) -> ExperimentGraph:
    return graph_from_json(Path(path).read_text(encoding="utf-8"))


def _format_weight(w: complex) -> str:
    if w.imag == 0:
        return f"{w.real:g}"
    return f"{w.real:g}{w.imag:+g}i"


def export_dot(graph: ExperimentGraph) -> str:
    """Graphviz text with one line per edge, in edge-id order.

    Each edge is drawn in two halves, one per endpoint mode, via a color
    list. Mode numbers past the palette reuse its colors cyclically and get
    the raw numbers as part of the label so nothing is lost.
    """
    lines = ["graph pairgraph {", "  layout=circo;", "  node [shape=circle];"]
    for lab in graph.vertex_labels:
        lines.append(f'  "{lab}";')
    size = len(EDGE_PALETTE)
    for e in graph.edges:
        color = f"{EDGE_PALETTE[e.color_u % size]}:{EDGE_PALETTE[e.color_v % size]}"
        labels = []
        if e.color_u >= size or e.color_v >= size:
            labels.append(f"{e.color_u}:{e.color_v}")
        if e.weight != 1:
            labels.append(_format_weight(e.weight))
        attrs = [f'color="{color}"']
        if labels:
            attrs.append(f'label="{" ".join(labels)}"')
        u = graph.vertex_labels[e.u]
        v = graph.vertex_labels[e.v]
        lines.append(f'  "{u}" -- "{v}" [{", ".join(attrs)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_experiment(graph: ExperimentGraph) -> dict:
    """Table of pair sources for a lab write-up, one crystal per edge.

    Relative amplitudes are magnitudes; sign and phase conventions live in
    the pump settings, not in this table.
    """
    return {
        "crystals": [
            {
                "crystal_id": e.id,
                "path_1": graph.vertex_labels[e.u],
                "path_2": graph.vertex_labels[e.v],
                "mode_1": e.color_u,
                "mode_2": e.color_v,
                "relative_amplitude": abs(e.weight),
            }
            for e in graph.edges
        ]
    }
