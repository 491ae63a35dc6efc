"""Graph constructions realizing named target states.

Each builder returns a verified graph: it re-simulates its own output and
raises VerificationError when the post-selected state is not the advertised
one, so a caller never receives a silently wrong construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .analysis import (
    DICKE_CLASS_NAMES,
    Feasibility,
    color_weight_classes,
    solve_weights,
    srv_feasibility,
    w_weight_closed_form,
)
from .errors import UnrealizableError, VerificationError
from .graphs import (
    ExperimentGraph,
    build_graph,
    enumerate_perfect_matchings,
    max_disjoint_perfect_matchings,
    reweighted,
)
from .states import (
    QuantumState,
    normalize,
    reference_state,
    schmidt_rank_vector,
    state_from_graph,
    states_equal,
    strip_trigger,
)
from .targets import AME, GHZ, SRV, Dicke, TargetSpec, W, label

__all__ = [
    "path_labels",
    "ghz_graph",
    "w_graph",
    "symmetric_dicke_graph",
    "general_dicke_graph",
    "srv_graph",
    "ame_graph",
    "SynthesisReport",
    "SynthesisResult",
    "synthesize",
]

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def path_labels(n: int) -> tuple[str, ...]:
    """Default path names: single letters up to 26 paths, p<i> beyond."""
    if n < 1:
        raise ValueError("need at least one path")
    if n <= len(_LETTERS):
        return tuple(_LETTERS[:n])
    return tuple(f"p{i}" for i in range(n))


def _check_even_parties(n: int, minimum: int = 2) -> None:
    if n < minimum or n % 2 != 0:
        raise ValueError(
            f"need an even path count of at least {minimum}, got {n}; "
            "odd counts leave one path unmatched and post-select to nothing"
        )


def ghz_graph(n: int, d: int = 2) -> ExperimentGraph:
    """Graph whose coincidences give the n-party, d-dimensional GHZ state.

    Two paths accept any dimension through parallel pair sources. On four or
    more paths each dimension needs its own perfect matching independent of
    the others, and four paths admit at most three pairwise independent
    matchings, so dimension 3 stops at n = 4 and dimension 4 is out of reach
    entirely.
    """
    _check_even_parties(n)
    if d < 2:
        raise ValueError("GHZ dimension must be at least 2")
    labels = path_labels(n)
    if n == 2:
        specs = [(0, 1, i, i) for i in range(d)]
    elif d == 2:
        if n == 4:
            specs = [(0, 1, 0, 0), (2, 3, 0, 0), (0, 2, 1, 1), (1, 3, 1, 1)]
        else:
            specs = [(2 * k, 2 * k + 1, 0, 0) for k in range(n // 2)]
            specs += [(2 * k + 1, (2 * k + 2) % n, 1, 1) for k in range(n // 2)]
    elif d == 3 and n == 4:
        specs = [
            (0, 1, 0, 0), (2, 3, 0, 0),
            (0, 2, 1, 1), (1, 3, 1, 1),
            (0, 3, 2, 2), (1, 2, 2, 2),
        ]
    else:
        raise UnrealizableError(
            f"GHZ{{{n},{d}}} is out of reach: beyond dimension 2 the cross "
            "matchings cannot all be cancelled, which limits graphs to four "
            "paths and dimension 3"
        )
    graph = build_graph(labels, specs)
    _require(states_equal(state_from_graph(graph), reference_state(GHZ(n, d))), f"GHZ{{{n},{d}}}")
    return graph


def w_graph(n: int) -> ExperimentGraph:
    """Hub graph emitting the n-party W state, weights included.

    Path 0 is the hub: it meets every other path through a pair of opposed
    sources, one firing the excitation into the hub (weight 1) and one firing
    it into the spoke (weight n - 1). The remaining paths are tiled by
    all-ground sources so each cross source has exactly one completion. The
    hub term then collects n - 1 matchings while each spoke term gets one,
    and the n - 1 weight restores the balance.
    """
    _check_even_parties(n)
    labels = path_labels(n)
    weights = w_weight_closed_form(n)
    specs: list[tuple] = []
    for y in range(1, n):
        specs.append((0, y, 1, 0, weights["alpha"]))
        specs.append((0, y, 0, 1, weights["beta"]))
    for page in range((n - 2) // 2):
        c_i = 2 + 2 * page
        d_i = 3 + 2 * page
        specs.append((1, c_i, 0, 0, weights["gamma"]))
        specs.append((1, d_i, 0, 0, weights["gamma"]))
        specs.append((c_i, d_i, 0, 0, weights["gamma"]))
    graph = build_graph(labels, specs)
    _require(states_equal(state_from_graph(graph), reference_state(W(n))), f"W{{{n}}}")
    return graph


def symmetric_dicke_graph(n: int) -> ExperimentGraph:
    """Complete graph with opposed source pairs: the half-excited Dicke state.

    Every source puts the excitation on one of its two paths, so each
    coincidence pattern has exactly n/2 excitations, and every such pattern
    arises from the (n/2)! ways of pairing its excited paths with its ground
    paths. All terms share that multiplicity, so unit weights already work.
    """
    _check_even_parties(n)
    specs: list[tuple] = []
    for i, j in itertools.combinations(range(n), 2):
        specs.append((i, j, 0, 1))
        specs.append((i, j, 1, 0))
    graph = build_graph(path_labels(n), specs)
    _require(
        states_equal(state_from_graph(graph), reference_state(Dicke(n, n // 2))),
        f"Dicke{{{n},{n // 2}}}",
    )
    return graph


def general_dicke_graph(n: int, m: int) -> ExperimentGraph:
    """Two-block scaffold for Dicke states away from half filling.

    The first n - m paths form an all-ground block, the last m an
    all-excited block, and every cross pair carries opposed sources. Unit
    weights do not flatten the term coefficients here; pair this graph with
    the weight solver.
    """
    _check_even_parties(n)
    if not (0 < m < n):
        raise ValueError(f"excitation count must satisfy 0 < m < n, got m={m}")
    black = range(n - m)
    red = range(n - m, n)
    specs: list[tuple] = []
    for i, j in itertools.combinations(black, 2):
        specs.append((i, j, 0, 0))
    for i, j in itertools.combinations(red, 2):
        specs.append((i, j, 1, 1))
    for i in black:
        for j in red:
            specs.append((i, j, 0, 1))
            specs.append((i, j, 1, 0))
    return build_graph(path_labels(n), specs)


def srv_graph(a: int, b: int, c: int) -> ExperimentGraph:
    """Three paths plus a trigger realizing the rank vector (a, b, c).

    The trigger path t always detects mode 0, so the heralded three-party
    state has exactly a terms, one per perfect matching, and the matchings
    cannot interfere because each carries its own mode on path a. Raises
    UnrealizableError with the counting verdict when the vector is
    infeasible or the state itself cannot exist.
    """
    verdict = srv_feasibility(a, b, c)
    if verdict.kind is not Feasibility.FEASIBLE:
        raise UnrealizableError(verdict.detail(), verdict=verdict)
    k_b = min(1 + (a - b), c, a - 1)
    k_c = a - 1 - k_b
    b0, c0, r_b, s_b, r_c, s_c = _srv_assignment(a, b, c, k_b, k_c)

    specs: list[tuple] = [("a", "t", 0, 0), ("b", "c", b0, c0)]
    if k_b:
        specs.append(("b", "t", r_b, 0))
        for i, c_i in enumerate(s_b, start=1):
            specs.append(("a", "c", i, c_i))
    if k_c:
        specs.append(("c", "t", r_c, 0))
        for j, b_j in enumerate(s_c, start=1 + k_b):
            specs.append(("a", "b", j, b_j))
    graph = build_graph(("a", "b", "c", "t"), specs)

    state = state_from_graph(graph)
    heralded = strip_trigger(state)
    ok = (
        state.term_count == a
        and _uniform(state)
        and schmidt_rank_vector(normalize(heralded)) == (a, b, c)
    )
    _require(ok, f"SRV{{{a},{b},{c}}}")
    return graph


def _srv_assignment(a, b, c, k_b, k_c):
    """First mode assignment covering all ranks with pairwise distinct terms.

    Path b must show b distinct modes, path c must show c, and no two terms
    may agree on both b and c at once (that would merge matrix columns and
    drop the rank on path a). A bounded scan in lexicographic order keeps
    the choice deterministic; feasible vectors always admit one because the
    shared-edge blocks leave at least two free slots on each side.
    """
    r_b_opts = list(range(b)) if k_b else [None]
    s_b_opts = list(itertools.combinations(range(c), k_b))
    r_c_opts = list(range(c)) if k_c else [None]
    s_c_opts = list(itertools.combinations(range(b), k_c))
    for r_b in r_b_opts:
        for s_b in s_b_opts:
            for r_c in r_c_opts:
                for s_c in s_c_opts:
                    b_shared = {r_b} if k_b else set()
                    c_shared = {r_c} if k_c else set()
                    for b0 in range(b):
                        if len({b0} | b_shared | set(s_c)) != b:
                            continue
                        for c0 in range(c):
                            if len({c0} | set(s_b) | c_shared) != c:
                                continue
                            pairs = [(b0, c0)]
                            pairs += [(r_b, c_i) for c_i in s_b]
                            pairs += [(b_j, r_c) for b_j in s_c]
                            if len(set(pairs)) == a:
                                return b0, c0, r_b, s_b, r_c, s_c
    raise VerificationError(
        f"internal search found no mode assignment for rank vector ({a}, {b}, {c})"
    )


def ame_graph(parties: int, d: int = 2) -> ExperimentGraph:
    """Three paths plus a trigger for the absolutely maximally entangled qubit state.

    Every bipartition of the heralded state is maximally mixed. The
    construction leans on a doubled source between the first two paths, and
    that trick does not scale: three independent pairings cannot carry the
    d*d equal terms once d exceeds 2.
    """
    if parties == 2:
        raise ValueError("two-party maximal entanglement is a Bell pair; use the GHZ constructor")
    if parties != 3:
        raise ValueError(
            f"only the three-party construction is implemented, not {parties} parties"
        )
    if d != 2:
        raise UnrealizableError(
            f"AME(3,{d}) needs {d * d} balanced terms, but three paths and a "
            "trigger admit only three independent pairings; only d = 2 fits"
        )
    specs = [
        ("a", "b", 0, 1),
        ("a", "b", 1, 0),
        ("c", "t", 1, 0),
        ("a", "c", 0, 0),
        ("b", "t", 0, 0),
        ("a", "t", 1, 0),
        ("b", "c", 1, 0),
    ]
    graph = build_graph(("a", "b", "c", "t"), specs)
    heralded = strip_trigger(state_from_graph(graph))
    _require(states_equal(heralded, reference_state(AME(3, 2))), "AME{3,2}")
    return graph


def _uniform(state: QuantumState) -> bool:
    mags = [abs(v) for v in state.amplitudes.values()]
    return bool(mags) and max(mags) - min(mags) <= 1e-9 * max(mags)


def _require(ok: bool, what: str) -> None:
    if not ok:
        raise VerificationError(f"constructed graph failed re-simulation against {what}")


@dataclass(frozen=True)
class SynthesisReport:
    """Numbers a caller can sanity-check without re-deriving the state."""

    target: str
    vertex_count: int
    edge_count: int
    matching_count: int
    term_count: int
    disjoint_count: int
    trigger: bool
    weights: dict[str, float] | None


@dataclass(frozen=True)
class SynthesisResult:
    graph: ExperimentGraph
    state: QuantumState
    report: SynthesisReport


def synthesize(spec: TargetSpec, *, seed: int = 7) -> SynthesisResult:
    """Build, weight, and verify a graph for the given target.

    Dispatches to the specialized constructors; Dicke targets away from half
    filling run the numeric weight solver on the two-block scaffold. The
    returned state is the normalized heralded state (trigger removed where
    one exists), re-checked against the reference before returning.
    """
    weights: dict[str, float] | None = None
    trigger = False

    if isinstance(spec, GHZ):
        graph = ghz_graph(spec.n, spec.d)
    elif isinstance(spec, W):
        graph = w_graph(spec.n)
        weights = w_weight_closed_form(spec.n)
    elif isinstance(spec, Dicke):
        if spec.n % 2 == 0 and spec.m == spec.n // 2:
            graph = symmetric_dicke_graph(spec.n)
        else:
            scaffold = general_dicke_graph(spec.n, spec.m)
            classes = color_weight_classes(scaffold, DICKE_CLASS_NAMES)
            present = {cls.class_id for cls in classes}
            pins = {"alpha": 1.0, ("delta" if "delta" in present else "gamma"): 1.0}
            weights = solve_weights(scaffold, classes, pinned=pins, seed=seed)
            per_edge = {}
            for cls in classes:
                for eid in cls.edge_ids:
                    per_edge[eid] = weights[cls.class_id]
            graph = reweighted(scaffold, per_edge)
    elif isinstance(spec, SRV):
        graph = srv_graph(spec.a, spec.b, spec.c)
        trigger = True
    elif isinstance(spec, AME):
        graph = ame_graph(spec.parties, spec.d)
        trigger = True
    else:
        raise TypeError(f"unknown target spec {spec!r}")

    state = state_from_graph(graph)
    heralded = strip_trigger(state) if trigger else state

    if isinstance(spec, SRV):
        ok = (
            heralded.term_count == spec.a
            and _uniform(heralded)
            and schmidt_rank_vector(normalize(heralded)) == (spec.a, spec.b, spec.c)
        )
    else:
        ok = states_equal(heralded, reference_state(spec))
    _require(ok, label(spec))

    matchings = enumerate_perfect_matchings(graph)
    disjoint, _ = max_disjoint_perfect_matchings(graph)
    report = SynthesisReport(
        target=label(spec),
        vertex_count=graph.vertex_count,
        edge_count=len(graph.edges),
        matching_count=len(matchings),
        term_count=state.term_count,
        disjoint_count=disjoint,
        trigger=trigger,
        weights=weights,
    )
    return SynthesisResult(graph=graph, state=normalize(heralded), report=report)
