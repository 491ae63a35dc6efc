"""Command-line front end.

Exit codes: 0 on success, 1 when a requested target is unrealizable,
infeasible, or fails verification, 2 for usage errors and malformed input.
Graph documents travel as JSON on stdin/stdout so the subcommands compose,
e.g. `pairgraph synth --target ghz --n 4 | pairgraph simulate`.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .analysis import Feasibility, srv_feasibility, srv_table
from .errors import DocumentError, PairGraphError, UnrealizableError
from .graphs import ExperimentGraph
from .io import (
    export_dot,
    export_experiment,
    graph_from_json,
    graph_to_json,
    read_graph,
)
from .states import (
    classify,
    is_maximally_entangled,
    normalize,
    reference_state,
    schmidt_rank_vector,
    state_from_graph,
    states_equal,
    strip_trigger,
)
from .targets import AME, GHZ, SRV, Dicke, TargetSpec, W, label

__all__ = ["cli_main", "main"]

# Which numeric flag belongs to which target family.
_FLAG_FAMILIES = {
    "n": ("ghz", "w", "dicke", "ame"),
    "d": ("ghz", "ame"),
    "m": ("dicke",),
    "A": ("srv",),
    "B": ("srv",),
    "C": ("srv",),
}


def _add_target_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--target",
        required=True,
        choices=("ghz", "w", "dicke", "srv", "ame"),
        help="state family",
    )
    p.add_argument("--n", type=int, help="party count (ghz, w, dicke; ame defaults to 3)")
    p.add_argument("--d", type=int, help="local dimension (ghz, ame; default 2)")
    p.add_argument("--m", type=int, help="excitation count (dicke)")
    p.add_argument("--A", type=int, help="leading rank (srv)")
    p.add_argument("--B", type=int, help="middle rank (srv)")
    p.add_argument("--C", type=int, help="trailing rank (srv)")


def _spec_from_args(args: argparse.Namespace) -> TargetSpec:
    """Build the target from --target plus its numeric flags.

    Flags that do not belong to the chosen family are rejected so a typo
    cannot silently change the request.
    """
    family = args.target
    for flag, families in _FLAG_FAMILIES.items():
        if getattr(args, flag) is not None and family not in families:
            raise ValueError(f"--{flag} does not apply to target {family}")

    def need(flag: str) -> int:
        value = getattr(args, flag)
        if value is None:
            raise ValueError(f"target {family} requires --{flag}")
        return value

    if family == "ghz":
        return GHZ(need("n"), args.d if args.d is not None else 2)
    if family == "w":
        return W(need("n"))
    if family == "dicke":
        return Dicke(need("n"), need("m"))
    if family == "srv":
        return SRV(need("A"), need("B"), need("C"))
    return AME(args.n if args.n is not None else 3, args.d if args.d is not None else 2)


def _load_graph(source: str | None) -> ExperimentGraph:
    if source is None or source == "-":
        return graph_from_json(sys.stdin.read())
    return read_graph(source)


def _format_term(term: tuple[int, ...], wide: bool) -> str:
    if wide:
        return ",".join(str(m) for m in term)
    return "".join(str(m) for m in term)


def _render_figure(graph_or_rows, path: str, kind: str) -> None:
    from . import plots  # matplotlib loads only when a figure is requested

    if kind == "graph":
        plots.plot_graph(graph_or_rows, path)
    else:
        plots.plot_feasibility(graph_or_rows, path)


def _cmd_synth(args: argparse.Namespace) -> int:
    from .constructors import synthesize

    spec = _spec_from_args(args)
    result = synthesize(spec, seed=args.seed)
    report = result.report
    lines = [
        ("target", report.target),
        ("vertices", report.vertex_count),
        ("edges", report.edge_count),
        ("matchings", report.matching_count),
        ("terms", report.term_count),
        ("independent", report.disjoint_count),
        ("trigger", "yes" if report.trigger else "no"),
    ]
    if report.weights:
        for name in sorted(report.weights):
            lines.append((f"weight.{name}", f"{report.weights[name]:.9g}"))
    for key, value in lines:
        print(f"{key}\t{value}", file=sys.stderr)
    text = graph_to_json(result.graph)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.figure:
        _render_figure(result.graph, args.figure, "graph")
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    if graph.vertex_count % 2 == 1:
        raise ValueError(
            "odd path count: no coincidence covers every path, add a trigger path"
        )
    state = state_from_graph(graph)
    if state.term_count == 0:
        print("note: no perfect matchings; the post-selected state is empty", file=sys.stderr)
        return 0
    state = normalize(state)
    wide = any(m > 9 for t in state.amplitudes for m in t)
    for term in state.terms():
        amp = state.amplitudes[term]
        print(f"{_format_term(term, wide)} {amp.real:.6f} {amp.imag:.6f}")
    return 0


def _cmd_srv(args: argparse.Namespace) -> int:
    state = state_from_graph(_load_graph(args.graph))
    if state.term_count == 0:
        raise ValueError("no perfect matchings; the post-selected state is empty")
    if args.trigger is not None:
        state = strip_trigger(state, args.trigger)
    ranks = schmidt_rank_vector(normalize(state))
    print(" ".join(str(r) for r in ranks))
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    state = state_from_graph(_load_graph(args.graph))
    if state.term_count == 0:
        raise ValueError("no perfect matchings; the post-selected state is empty")
    if args.trigger is not None:
        state = strip_trigger(state, args.trigger)
    spec = classify(normalize(state))
    print(label(spec) if spec is not None else "Other")
    return 0


def _cmd_feasible(args: argparse.Namespace) -> int:
    verdict = srv_feasibility(args.a, args.b, args.c)
    print(verdict.detail())
    return 0 if verdict.kind is Feasibility.FEASIBLE else 1


_CELL_LETTER = {
    Feasibility.FEASIBLE: "F",
    Feasibility.INFEASIBLE: "I",
    Feasibility.NONEXISTENT: "N",
}


def _cmd_table(args: argparse.Namespace) -> int:
    rows = srv_table(args.max_a)
    if args.format == "csv":
        print("a,b,c,verdict,detail")
        for v in rows:
            expr = v.detail().split(": ", 1)[1]
            print(f"{v.a},{v.b},{v.c},{v.kind.value},{expr}")
    else:
        by_cell = {(v.a, v.b, v.c): v for v in rows}
        print("F feasible   I infeasible-pair-sources   N nonexistent-state")
        for a in range(1, args.max_a + 1):
            print(f"A={a}")
            for b in range(1, a + 1):
                cells = " ".join(
                    _CELL_LETTER[by_cell[(a, b, c)].kind] for c in range(1, b + 1)
                )
                print(f"  B={b}  {cells}")
    if args.figure:
        _render_figure(rows, args.figure, "table")
    return 0


def _cmd_export_dot(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    sys.stdout.write(export_dot(graph))
    if args.figure:
        _render_figure(graph, args.figure, "graph")
    return 0


def _cmd_export_experiment(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    text = json.dumps(export_experiment(graph), indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    graph = _load_graph(args.graph)
    state = state_from_graph(graph)
    name = label(spec)
    if state.term_count == 0:
        print(f"mismatch: the post-selected state is empty, not {name}")
        return 1
    state = normalize(state)

    if isinstance(spec, SRV):
        if state.party_count == 4:
            try:
                state = strip_trigger(state)
            except ValueError:
                print("mismatch: the last path is not a constant trigger")
                return 1
        if state.party_count != 3:
            print(f"mismatch: {state.party_count} heralded paths, need 3")
            return 1
        want = (spec.a, spec.b, spec.c)
        ranks = schmidt_rank_vector(state)
        if ranks != want:
            print(f"mismatch: rank vector {ranks}, want {want}")
            return 1
        if state.term_count != spec.a or not is_maximally_entangled(state):
            print("mismatch: not a maximally entangled witness")
            return 1
        print(f"verified: {name}")
        return 0

    parties = spec.parties if isinstance(spec, AME) else spec.n
    if state.party_count == parties + 1:
        try:
            state = strip_trigger(state)
        except ValueError:
            print(f"mismatch: the post-selected state is not {name}")
            return 1
    if state.party_count == parties and states_equal(state, reference_state(spec)):
        print(f"verified: {name}")
        return 0
    print(f"mismatch: the post-selected state is not {name}")
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pairgraph",
        description="Design and analyze photon-pair experiments as edge-colored graphs.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="construct a verified graph for a target state")
    _add_target_flags(p)
    p.add_argument("--out", help="write the graph document here instead of stdout")
    p.add_argument("--figure", help="also render the graph to this image file")
    p.add_argument("--seed", type=int, default=7, help="seed for the weight solver restarts")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("simulate", help="print the post-selected state of a graph")
    p.add_argument("graph", nargs="?", help="graph document (default: stdin)")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("srv", help="print the sorted rank vector of the state")
    p.add_argument("graph", nargs="?", help="graph document (default: stdin)")
    p.add_argument("--trigger", type=int, help="strip this constant path first")
    p.set_defaults(func=_cmd_srv)

    p = sub.add_parser("classify", help="name the state family of a graph, if recognized")
    p.add_argument("graph", nargs="?", help="graph document (default: stdin)")
    p.add_argument("--trigger", type=int, help="strip this constant path first")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("feasible", help="judge a three-party rank vector")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("c", type=int)
    p.set_defaults(func=_cmd_feasible)

    p = sub.add_parser("table", help="feasibility grid for all vectors up to a leading rank")
    p.add_argument("--max-a", type=int, required=True, dest="max_a", help="largest leading rank")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--figure", help="also render the verdict map to this image file")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("export-dot", help="print the graph in DOT form")
    p.add_argument("graph", nargs="?", help="graph document (default: stdin)")
    p.add_argument("--figure", help="also render the graph to this image file")
    p.set_defaults(func=_cmd_export_dot)

    p = sub.add_parser("export-experiment", help="print the crystal table for a lab setup")
    p.add_argument("graph", nargs="?", help="graph document (default: stdin)")
    p.add_argument("--out", help="write the table here instead of stdout")
    p.set_defaults(func=_cmd_export_experiment)

    p = sub.add_parser("verify", help="check a graph against a target state")
    _add_target_flags(p)
    p.add_argument("graph", nargs="?", help="graph document (default: stdin)")
    p.set_defaults(func=_cmd_verify)

    return parser


def cli_main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except UnrealizableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except PairGraphError as exc:
        # Weight-solve and verification failures are target failures (1);
        # malformed documents are usage errors (2).
        print(f"error: {exc}", file=sys.stderr)
        return 2 if isinstance(exc, DocumentError) else 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())
