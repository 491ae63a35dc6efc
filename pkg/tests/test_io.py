"""Document round-trips, DOT export, and the crystal table."""

from __future__ import annotations

import json
import random

import pytest

from pairgraph import (
    DocumentError,
    build_graph,
    export_dot,
    export_experiment,
    ghz_graph,
    graph_from_json,
    graph_to_document,
    graph_to_json,
    read_graph,
    symmetric_dicke_graph,
    w_graph,
    write_graph,
)


def _random_graph(rng: random.Random):
    n = rng.choice([2, 4, 6, 8])
    labels = tuple(f"v{i}" for i in range(n))
    edge_count = rng.randint(1, 12)
    specs = []
    for _ in range(edge_count):
        u = rng.randrange(n)
        v = rng.randrange(n)
        while v == u:
            v = rng.randrange(n)
        weight = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        specs.append((u, v, rng.randrange(4), rng.randrange(4), weight))
    return build_graph(labels, specs)


def test_json_round_trip_preserves_everything():
    rng = random.Random(1905)
    for _ in range(50):
        g = _random_graph(rng)
        back = graph_from_json(graph_to_json(g))
        assert back.vertex_labels == g.vertex_labels
        assert back.edges == g.edges


def test_json_output_is_byte_stable():
    g = w_graph(6)
    assert graph_to_json(g) == graph_to_json(g)


def test_document_shape():
    doc = graph_to_document(ghz_graph(4, 2))
    assert doc["schema_version"] == 1
    assert doc["vertices"] == ["a", "b", "c", "d"]
    assert doc["edges"][0] == {
        "u": "a",
        "v": "b",
        "color_u": 0,
        "color_v": 0,
        "weight": {"re": 1.0, "im": 0.0},
    }
    json.dumps(doc)  # shape stays plain data


def _valid_doc() -> dict:
    return json.loads(graph_to_json(ghz_graph(4, 2)))


def test_document_rejects_unknown_schema_version():
    doc = _valid_doc()
    doc["schema_version"] = 99
    with pytest.raises(DocumentError, match="schema_version"):
        graph_from_json(json.dumps(doc))


def test_document_rejects_unknown_fields():
    doc = _valid_doc()
    doc["comment"] = "hello"
    with pytest.raises(DocumentError, match="comment"):
        graph_from_json(json.dumps(doc))
    doc = _valid_doc()
    doc["edges"][1]["note"] = "hello"
    with pytest.raises(DocumentError, match=r"edges\[1\]"):
        graph_from_json(json.dumps(doc))


def test_document_diagnostics_name_the_field():
    doc = _valid_doc()
    del doc["edges"][2]["color_u"]
    with pytest.raises(DocumentError, match=r"edges\[2\].color_u"):
        graph_from_json(json.dumps(doc))
    doc = _valid_doc()
    doc["edges"][0]["weight"] = {"re": 1.0}
    with pytest.raises(DocumentError, match=r"edges\[0\].weight"):
        graph_from_json(json.dumps(doc))
    doc = _valid_doc()
    doc["edges"][0]["u"] = "zz"  # not a declared vertex
    with pytest.raises(DocumentError, match="zz"):
        graph_from_json(json.dumps(doc))


def test_document_rejects_invalid_json():
    with pytest.raises(DocumentError):
        graph_from_json("{not json")
    with pytest.raises(DocumentError):
        graph_from_json("[]")


def test_write_and_read_files(tmp_path):
    g = w_graph(4)
    path = tmp_path / "w4.json"
    write_graph(g, path)
    assert read_graph(path).edges == g.edges


def test_export_dot_square_graph():
    text = export_dot(ghz_graph(4, 2))
    assert text.startswith("graph pairgraph {")
    assert text.count('"a" -- ') + text.count('"b" -- ') + text.count('"c" -- ') == 4
    assert text.count('color="black:black"') == 2
    assert text.count('color="red:red"') == 2
    assert export_dot(ghz_graph(4, 2)) == text


def test_export_dot_parallel_edges_stay_separate():
    text = export_dot(symmetric_dicke_graph(4))
    edge_lines = [line for line in text.splitlines() if " -- " in line]
    assert len(edge_lines) == 12
    assert all('color="black:red"' in line or 'color="red:black"' in line for line in edge_lines)


def test_export_dot_labels_weights_and_high_modes():
    g = build_graph(("a", "b"), [("a", "b", 0, 9, 2.5)])
    text = export_dot(g)
    assert 'label="0:9 2.5"' in text  # modes past the palette plus weight
    plain = export_dot(build_graph(("a", "b"), [("a", "b", 0, 0)]))
    assert "label" not in plain


def test_export_experiment_square_graph():
    doc = export_experiment(ghz_graph(4, 2))
    crystals = doc["crystals"]
    assert [c["crystal_id"] for c in crystals] == [0, 1, 2, 3]
    assert [(c["path_1"], c["path_2"], c["mode_1"], c["mode_2"]) for c in crystals] == [
        ("a", "b", 0, 0),
        ("c", "d", 0, 0),
        ("a", "c", 1, 1),
        ("b", "d", 1, 1),
    ]
    assert all(c["relative_amplitude"] == 1.0 for c in crystals)


def test_export_experiment_uses_weight_magnitude():
    g = build_graph(("a", "b"), [("a", "b", 0, 0, complex(-3, 4))])
    doc = export_experiment(g)
    assert len(doc["crystals"]) == 1
    assert doc["crystals"][0]["relative_amplitude"] == pytest.approx(5.0)
