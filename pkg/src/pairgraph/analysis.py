"""Feasibility of rank vectors and weight solving for target interference.

The feasibility test answers, for a three-party rank vector (A, B, C) with
A >= B >= C, whether any pair-source graph can carry a state with those
ranks. Two obstructions exist: the state itself may be impossible
(A > B*C exceeds what a bipartite cut allows), or every graph attempt runs
out of independent perfect matchings. The counting argument credits one
matching for the seed term, then at most min(1 + (A - B), C) further terms
reusing the B-side resource and at most min(1 + (A - C), B - 1) reusing the
C-side one; the vector is reachable exactly when those credits cover A.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy.optimize import least_squares

from .errors import WeightSolveError
from .graphs import ExperimentGraph, PerfectMatching, enumerate_perfect_matchings, reweighted
from .states import Term, is_maximally_entangled, state_from_graph

__all__ = [
    "Feasibility",
    "FeasibilityVerdict",
    "srv_feasibility",
    "srv_table",
    "WeightClass",
    "color_weight_classes",
    "OLIVER_CLASS_NAMES",
    "DICKE_CLASS_NAMES",
    "group_matchings_by_term",
    "solve_weights",
    "w_weight_closed_form",
]

SOLVER_TOL = 1e-9


class Feasibility(enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible-pair-sources"
    NONEXISTENT = "nonexistent-state"


@dataclass(frozen=True)
class FeasibilityVerdict:
    """Outcome of the rank-vector test plus the numbers behind it."""

    a: int
    b: int
    c: int
    kind: Feasibility
    lhs: int
    rhs: int
    summands: tuple[int, int, int] | None

    def detail(self) -> str:
        """One-line justification, e.g. 'feasible: 1+2+1 >= 4'."""
        if self.kind is Feasibility.NONEXISTENT:
            return f"{self.kind.value}: {self.a} > {self.b}*{self.c}"
        assert self.summands is not None
        op = ">=" if self.kind is Feasibility.FEASIBLE else "<"
        lhs = "+".join(str(s) for s in self.summands)
        return f"{self.kind.value}: {lhs} {op} {self.rhs}"


def srv_feasibility(a: int, b: int, c: int) -> FeasibilityVerdict:
    """Classify the rank vector (a, b, c); requires a >= b >= c >= 1."""
    if not (a >= b >= c >= 1):
        raise ValueError(f"rank vector must satisfy a >= b >= c >= 1, got ({a}, {b}, {c})")
    if a > b * c:
        return FeasibilityVerdict(
            a=a, b=b, c=c, kind=Feasibility.NONEXISTENT, lhs=a, rhs=b * c, summands=None
        )
    summands = (1, min(1 + (a - b), c), min(1 + (a - c), b - 1))
    lhs = sum(summands)
    kind = Feasibility.FEASIBLE if lhs >= a else Feasibility.INFEASIBLE
    return FeasibilityVerdict(a=a, b=b, c=c, kind=kind, lhs=lhs, rhs=a, summands=summands)


def srv_table(max_a: int) -> list[FeasibilityVerdict]:
    """Verdicts for every sorted rank vector with leading rank up to max_a."""
    if max_a < 1:
        raise ValueError("max_a must be at least 1")
    rows = []
    for a in range(1, max_a + 1):
        for b in range(1, a + 1):
            for c in range(1, b + 1):
                rows.append(srv_feasibility(a, b, c))
    return rows


# ---------------------------------------------------------------------------
# Weight classes: edges grouped by their ordered color pair.

@dataclass(frozen=True)
class WeightClass:
    """A named set of edges constrained to share one weight."""

    class_id: str
    edge_ids: tuple[int, ...]


# Hub constructions for W states use three classes: cross edges firing the
# excitation at the hub (alpha), cross edges firing it at a spoke (beta),
# and the all-ground filler edges (gamma).
OLIVER_CLASS_NAMES: Mapping[tuple[int, int], str] = {
    (1, 0): "alpha",
    (0, 1): "beta",
    (0, 0): "gamma",
}

# Two-block Dicke graphs distinguish the cross edges by which side takes the
# excited mode, plus the two within-block classes.
DICKE_CLASS_NAMES: Mapping[tuple[int, int], str] = {
    (0, 1): "alpha",
    (1, 0): "beta",
    (1, 1): "gamma",
    (0, 0): "delta",
}


def color_weight_classes(
    graph: ExperimentGraph, naming: Mapping[tuple[int, int], str]
) -> tuple[WeightClass, ...]:
    """Partition the edges by ordered color pair and name each part.

    The key for an edge is (color at its lower-index endpoint, color at its
    higher-index endpoint). Every color pair present in the graph must be
    named; classes come out sorted by name.
    """
    groups: dict[str, list[int]] = {}
    for e in graph.edges:
        lo, hi = (e.u, e.v) if e.u <= e.v else (e.v, e.u)
        key = (e.color_at(lo), e.color_at(hi))
        if key not in naming:
            raise ValueError(f"no class name for color pair {key} (edge {e.id})")
        groups.setdefault(naming[key], []).append(e.id)
    return tuple(
        WeightClass(class_id=name, edge_ids=tuple(sorted(ids)))
        for name, ids in sorted(groups.items())
    )


def group_matchings_by_term(
    graph: ExperimentGraph,
) -> dict[Term, tuple[PerfectMatching, ...]]:
    """Perfect matchings grouped by the ket they produce, in term order."""
    by_id = graph.edges_by_id()
    grouped: dict[Term, list[PerfectMatching]] = {}
    for m in enumerate_perfect_matchings(graph):
        term = [0] * graph.vertex_count
        for eid in m.edge_ids:
            e = by_id[eid]
            term[e.u] = e.color_u
            term[e.v] = e.color_v
        grouped.setdefault(tuple(term), []).append(m)
    return {t: tuple(grouped[t]) for t in sorted(grouped)}


def w_weight_closed_form(n: int) -> dict[str, float]:
    """Exact class weights making the hub graph on n vertices emit a W state.

    Each beta edge must outweigh the hub branch by the number of spokes,
    because the hub term collects one matching per page while every spoke
    term is produced exactly once.
    """
    if n < 2 or n % 2 != 0:
        raise ValueError("hub construction needs an even vertex count of at least 2")
    return {"alpha": 1.0, "beta": float(n - 1), "gamma": 1.0}


def solve_weights(
    graph: ExperimentGraph,
    classes: Sequence[WeightClass],
    *,
    pinned: Mapping[str, float] | None = None,
    seed: int = 7,
    max_restarts: int = 100,
    tol: float = SOLVER_TOL,
) -> dict[str, float]:
    """Find real class weights that flatten every term coefficient.

    The classes must partition the edge set. Pinned classes keep the given
    value; when nothing is pinned the first class is fixed at 1 so the
    trivial all-zero solution is excluded. The residual equates each term
    coefficient with the next; candidate solutions are accepted only after
    re-simulating the reweighted graph and checking the state kept all its
    terms with one common amplitude. Weights may come out negative: some
    targets are reachable only through destructive interference.
    """
    class_list = list(classes)
    names = [c.class_id for c in class_list]
    if len(set(names)) != len(names):
        raise ValueError("duplicate class ids")
    covered: dict[int, str] = {}
    for c in class_list:
        for eid in c.edge_ids:
            if eid in covered:
                raise ValueError(f"edge {eid} appears in classes {covered[eid]!r} and {c.class_id!r}")
            covered[eid] = c.class_id
    graph_ids = {e.id for e in graph.edges}
    if set(covered) != graph_ids:
        missing = sorted(graph_ids - set(covered))
        extra = sorted(set(covered) - graph_ids)
        raise ValueError(f"classes must partition the edges (missing {missing}, unknown {extra})")

    pins = dict(pinned) if pinned else {}
    for name in pins:
        if name not in names:
            raise ValueError(f"pinned class {name!r} does not exist")
    if not pins:
        pins[names[0]] = 1.0
    free = [name for name in names if name not in pins]

    grouped = group_matchings_by_term(graph)
    terms = list(grouped)
    if len(terms) < 2:
        raise ValueError("need at least two distinct terms to equalize")
    class_of_edge = covered

    # Every matching reduces to an exponent vector over the classes.
    exponents: list[list[np.ndarray]] = []
    name_pos = {name: i for i, name in enumerate(names)}
    for t in terms:
        rows = []
        for m in grouped[t]:
            exp = np.zeros(len(names), dtype=int)
            for eid in m.edge_ids:
                exp[name_pos[class_of_edge[eid]]] += 1
            rows.append(exp)
        exponents.append(rows)

    def coefficients(values: dict[str, float]) -> np.ndarray:
        vec = np.array([values[name] for name in names], dtype=float)
        out = np.empty(len(terms), dtype=float)
        for i, rows in enumerate(exponents):
            out[i] = sum(float(np.prod(vec**exp)) for exp in rows)
        return out

    def residual(x: np.ndarray) -> np.ndarray:
        values = dict(pins)
        values.update(zip(free, x))
        coeff = coefficients(values)
        return coeff[1:] - coeff[:-1]

    def assemble(x: np.ndarray) -> dict[str, float]:
        values = dict(pins)
        values.update((name, float(v)) for name, v in zip(free, x))
        return {name: float(values[name]) for name in names}

    def verified(values: dict[str, float]) -> bool:
        attempt = reweighted(graph, {eid: values[cls] for eid, cls in class_of_edge.items()})
        state = state_from_graph(attempt)
        return state.term_count == len(terms) and is_maximally_entangled(state, tol)

    if not free:
        values = assemble(np.empty(0))
        if np.max(np.abs(residual(np.empty(0)))) <= tol and verified(values):
            return values
        raise WeightSolveError(
            "all classes pinned and the pinned values do not flatten the terms",
            residual=float(np.max(np.abs(residual(np.empty(0))))),
        )

    rng = random.Random(seed)
    starts = [np.ones(len(free))]
    for _ in range(max_restarts):
        starts.append(np.array([rng.uniform(-3.0, 3.0) for _ in free]))

    best = float("inf")
    for x0 in starts:
        try:
            fit = least_squares(residual, x0, xtol=1e-15, ftol=1e-15, gtol=1e-15)
        except ValueError:
            continue
        err = float(np.max(np.abs(fit.fun))) if fit.fun.size else 0.0
        best = min(best, err)
        if err <= tol:
            values = assemble(fit.x)
            if verified(values):
                return values
    raise WeightSolveError(
        f"no weight assignment found after {len(starts)} starts", residual=best
    )
