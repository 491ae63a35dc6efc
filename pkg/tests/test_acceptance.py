"""End-to-end acceptance checks for the whole package.

Each test prints one PASS/FAIL line naming the guarantee it covers, so a
plain `pytest -s tests/test_acceptance.py` reads as a checklist. Tolerances:
state equality 1e-9, amplitude spread 1e-9, weight agreement 1e-9.
"""

from __future__ import annotations

import math
import random
import time
from contextlib import contextmanager

import pytest

from pairgraph import (
    AME,
    GHZ,
    SRV,
    Dicke,
    Feasibility,
    UnrealizableError,
    W,
    ame_graph,
    build_graph,
    color_weight_classes,
    DICKE_CLASS_NAMES,
    OLIVER_CLASS_NAMES,
    enumerate_perfect_matchings,
    general_dicke_graph,
    ghz_graph,
    group_matchings_by_term,
    is_maximally_entangled,
    max_disjoint_perfect_matchings,
    normalize,
    read_graph,
    reference_state,
    reweighted,
    schmidt_rank_vector,
    solve_weights,
    srv_feasibility,
    srv_graph,
    srv_table,
    state_from_graph,
    state_from_terms,
    states_equal,
    strip_trigger,
    synthesize,
    w_graph,
    write_graph,
)
from pairgraph.cli import cli_main


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"FAIL {name}")
        raise
    print(f"PASS {name}")


def test_acceptance_ghz_family():
    with criterion("ghz family: cycles up to 12 photons plus the 3-dimensional square"):
        for n in (4, 6, 8, 10, 12):
            result = synthesize(GHZ(n, 2))
            assert result.report.matching_count == 2
            assert states_equal(result.state, reference_state(GHZ(n, 2)), tol=1e-9)
            assert schmidt_rank_vector(result.state) == (2,) * n

        g43 = ghz_graph(4, 3)
        count, _ = max_disjoint_perfect_matchings(g43)
        assert count == 3
        assert states_equal(
            normalize(state_from_graph(g43)), reference_state(GHZ(4, 3)), tol=1e-9
        )

        with pytest.raises(UnrealizableError):
            ghz_graph(6, 3)
        with pytest.raises(UnrealizableError):
            ghz_graph(4, 4)


def test_acceptance_matching_counts():
    with criterion("matching oracle: complete-graph counts equal the double factorial"):
        expected = {2: 1, 4: 3, 6: 15, 8: 105, 10: 945, 12: 10395}
        elapsed = {}
        for n, want in expected.items():
            labels = tuple(f"p{i}" for i in range(n))
            specs = [(i, j, 0, 0) for i in range(n) for j in range(i + 1, n)]
            g = build_graph(labels, specs)
            start = time.monotonic()
            got = len(enumerate_perfect_matchings(g))
            elapsed[n] = time.monotonic() - start
            assert got == want, f"K_{n}"
        assert elapsed[12] < 10.0


def test_acceptance_w_family():
    with criterion("w family: weighted book graphs, unit-weight ratios, half-red edges"):
        for n in (4, 6, 8, 10):
            g = w_graph(n)
            assert states_equal(
                normalize(state_from_graph(g)), reference_state(W(n)), tol=1e-9
            )

            unit = reweighted(g, {e.id: 1.0 for e in g.edges})
            amps = state_from_graph(unit).amplitudes
            hub_term = (1,) + (0,) * (n - 1)
            assert abs(amps[hub_term] - (n - 1)) < 1e-9
            for term, amp in amps.items():
                if term != hub_term:
                    assert abs(amp - 1.0) < 1e-9

            for m in enumerate_perfect_matchings(g):
                half_red = [
                    eid
                    for eid in m.edge_ids
                    if (g.edges[eid].color_u == 1) != (g.edges[eid].color_v == 1)
                ]
                assert len(half_red) == 1


def test_acceptance_symmetric_dicke():
    with criterion("symmetric dicke: half-excited states with factorial multiplicity"):
        for n in (4, 6):
            result = synthesize(Dicke(n, n // 2))
            assert states_equal(
                result.state, reference_state(Dicke(n, n // 2)), tol=1e-9
            )
            groups = group_matchings_by_term(result.graph)
            assert all(len(v) == math.factorial(n // 2) for v in groups.values())


def test_acceptance_weight_solver():
    with criterion("weight solver: balanced two-excitation state and closed-form ratios"):
        g = general_dicke_graph(6, 2)
        classes = color_weight_classes(g, DICKE_CLASS_NAMES)
        solved = solve_weights(g, classes, pinned={"alpha": 1.0, "delta": 1.0})
        resim = normalize(
            state_from_graph(
                reweighted(
                    g,
                    {eid: solved[c.class_id] for c in classes for eid in c.edge_ids},
                )
            )
        )
        assert resim.term_count == math.comb(6, 2)
        assert is_maximally_entangled(resim, tol=1e-9)
        mags = [abs(a) for a in resim.amplitudes.values()]
        assert max(mags) - min(mags) < 1e-9

        for n in (4, 6, 8, 10):
            base = w_graph(n)
            unit = reweighted(base, {e.id: 1.0 for e in base.edges})
            oliver = color_weight_classes(unit, OLIVER_CLASS_NAMES)
            numeric = solve_weights(unit, oliver, pinned={"alpha": 1.0, "gamma": 1.0})
            assert abs(numeric["beta"] - (n - 1)) < 1e-9


def test_acceptance_rank_vectors():
    with criterion("rank vectors: verdict anchors and graphs for every reachable cell"):
        four_level = state_from_terms(
            3,
            [((0, 0, 0), 0.5), ((1, 0, 1), 0.5), ((2, 1, 0), 0.5), ((3, 1, 1), 0.5)],
        )
        assert schmidt_rank_vector(four_level) == (4, 2, 2)

        assert srv_feasibility(6, 3, 3).kind is Feasibility.FEASIBLE
        assert srv_feasibility(4, 2, 2).kind is Feasibility.FEASIBLE
        assert srv_feasibility(6, 3, 2).kind is Feasibility.INFEASIBLE
        assert srv_feasibility(7, 3, 2).kind is Feasibility.NONEXISTENT

        feasible_cells = [
            (v.a, v.b, v.c)
            for v in srv_table(8)
            if v.kind is Feasibility.FEASIBLE
        ]
        assert len(feasible_cells) >= 20
        for a, b, c in feasible_cells:
            g = srv_graph(a, b, c)
            state = state_from_graph(g)
            assert all(t[3] == 0 for t in state.amplitudes), (a, b, c)
            heralded = normalize(strip_trigger(state))
            assert heralded.term_count == a, (a, b, c)
            assert is_maximally_entangled(heralded, tol=1e-9), (a, b, c)
            assert schmidt_rank_vector(heralded) == (a, b, c)


def test_acceptance_ame():
    with criterion("ame: the four-matching qubit graph and the d=3 impossibility"):
        g = ame_graph(3, 2)
        assert len(enumerate_perfect_matchings(g)) == 4
        want = state_from_terms(
            4,
            [
                ((0, 0, 0, 0), 0.5),
                ((0, 1, 1, 0), 0.5),
                ((1, 0, 1, 0), 0.5),
                ((1, 1, 0, 0), 0.5),
            ],
        )
        assert states_equal(normalize(state_from_graph(g)), want, tol=1e-9)
        with pytest.raises(UnrealizableError):
            ame_graph(3, 3)


def test_acceptance_four_vertex_bound():
    with criterion("packing bound: random 4-vertex multigraphs never exceed three"):
        rng = random.Random(97)
        for _ in range(1000):
            edge_count = rng.randint(1, 20)
            specs = []
            for _ in range(edge_count):
                u = rng.randrange(4)
                v = rng.randrange(4)
                while v == u:
                    v = rng.randrange(4)
                specs.append((u, v, rng.randrange(3), rng.randrange(3)))
            g = build_graph(("a", "b", "c", "d"), specs)
            count, _ = max_disjoint_perfect_matchings(g)
            assert count <= 3


def _target_args(spec) -> list[str]:
    if isinstance(spec, GHZ):
        return ["--target", "ghz", "--n", str(spec.n), "--d", str(spec.d)]
    if isinstance(spec, W):
        return ["--target", "w", "--n", str(spec.n)]
    if isinstance(spec, Dicke):
        return ["--target", "dicke", "--n", str(spec.n), "--m", str(spec.m)]
    if isinstance(spec, SRV):
        return ["--target", "srv", "--A", str(spec.a), "--B", str(spec.b), "--C", str(spec.c)]
    return ["--target", "ame", "--n", str(spec.parties), "--d", str(spec.d)]


def test_acceptance_file_round_trips(tmp_path):
    with criterion("documents: file write/read identity on randomized graphs"):
        rng = random.Random(5150)
        for i in range(50):
            n = rng.choice([2, 4, 6, 8])
            labels = tuple(f"v{k}" for k in range(n))
            specs = []
            for _ in range(rng.randint(1, 12)):
                u = rng.randrange(n)
                v = rng.randrange(n)
                while v == u:
                    v = rng.randrange(n)
                w = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
                specs.append((u, v, rng.randrange(4), rng.randrange(4), w))
            g = build_graph(labels, specs)
            path = tmp_path / f"graph{i}.json"
            write_graph(g, path)
            back = read_graph(path)
            assert back.vertex_labels == g.vertex_labels
            assert back.edges == g.edges


def test_acceptance_cli_matrix(tmp_path):
    with criterion("cli: synth output verifies for every reachable target"):
        matrix: list = [GHZ(n, 2) for n in (4, 6, 8, 10, 12)]
        matrix.append(GHZ(4, 3))
        matrix.extend(W(n) for n in (4, 6, 8, 10))
        matrix.extend([Dicke(4, 2), Dicke(6, 3), Dicke(6, 2)])
        matrix.extend(
            SRV(v.a, v.b, v.c)
            for v in srv_table(8)
            if v.kind is Feasibility.FEASIBLE
        )
        matrix.append(AME(3, 2))

        for i, spec in enumerate(matrix):
            path = tmp_path / f"spec{i}.json"
            args = _target_args(spec)
            assert cli_main(["synth", *args, "--out", str(path)]) == 0, spec
            assert cli_main(["verify", *args, str(path)]) == 0, spec


def test_acceptance_cli_byte_stability(capsys, monkeypatch):
    with criterion("cli: repeated runs produce byte-identical output"):
        import io as _io

        def run(args, stdin_text=None):
            if stdin_text is not None:
                monkeypatch.setattr("sys.stdin", _io.StringIO(stdin_text))
            code = cli_main(args)
            out, err = capsys.readouterr()
            return code, out, err

        synth_args = ["synth", "--target", "dicke", "--n", "6", "--m", "2"]
        first = run(synth_args)
        second = run(synth_args)
        assert first == second

        doc = first[1]
        sim_one = run(["simulate"], stdin_text=doc)
        sim_two = run(["simulate"], stdin_text=doc)
        assert sim_one == sim_two
        assert sim_one[0] == 0

        table_one = run(["table", "--max-a", "8", "--format", "csv"])
        table_two = run(["table", "--max-a", "8", "--format", "csv"])
        assert table_one == table_two
