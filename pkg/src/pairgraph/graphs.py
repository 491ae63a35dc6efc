"""Edge-colored weighted multigraphs and perfect-matching search.

Vertices are optical paths, edges are photon-pair sources. An edge carries
one mode number per endpoint (its colors) and a complex relative amplitude.
Parallel edges between the same two vertices are distinct objects told apart
by their integer ids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Edge",
    "ExperimentGraph",
    "PerfectMatching",
    "build_graph",
    "enumerate_perfect_matchings",
    "max_disjoint_perfect_matchings",
    "is_perfect_matching",
    "reweighted",
]


@dataclass(frozen=True)
class Edge:
    """One pair source emitting mode `color_u` into path u and `color_v` into path v."""

    id: int
    u: int
    v: int
    color_u: int
    color_v: int
    weight: complex = 1.0 + 0.0j

    def pair(self) -> tuple[int, int]:
        """Unordered endpoint pair, lower vertex index first."""
        return (self.u, self.v) if self.u <= self.v else (self.v, self.u)

    def other(self, vertex: int) -> int:
        if vertex == self.u:
            return self.v
        if vertex == self.v:
            return self.u
        raise ValueError(f"vertex {vertex} is not an endpoint of edge {self.id}")

    def color_at(self, vertex: int) -> int:
        if vertex == self.u:
            return self.color_u
        if vertex == self.v:
            return self.color_v
        raise ValueError(f"vertex {vertex} is not an endpoint of edge {self.id}")


@dataclass(frozen=True)
class ExperimentGraph:
    """Immutable multigraph; all mutation helpers return new graphs."""

    vertex_labels: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        labels = tuple(self.vertex_labels)
        edges = tuple(self.edges)
        object.__setattr__(self, "vertex_labels", labels)
        object.__setattr__(self, "edges", edges)
        if not labels:
            raise ValueError("graph needs at least one vertex")
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate vertex labels")
        n = len(labels)
        seen_ids: set[int] = set()
        for e in edges:
            if e.id in seen_ids:
                raise ValueError(f"duplicate edge id {e.id}")
            seen_ids.add(e.id)
            if not (0 <= e.u < n and 0 <= e.v < n):
                raise ValueError(f"edge {e.id} endpoint out of range: ({e.u}, {e.v})")
            if e.u == e.v:
                raise ValueError(f"edge {e.id} is a self-loop on vertex {e.u}")
            if e.color_u < 0 or e.color_v < 0:
                raise ValueError(f"edge {e.id} has a negative mode number")
            w = complex(e.weight)
            if not (math.isfinite(w.real) and math.isfinite(w.imag)):
                raise ValueError(f"edge {e.id} has a non-finite weight")

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_labels)

    def label_index(self, label: str) -> int:
        try:
            return self.vertex_labels.index(label)
        except ValueError:
            raise ValueError(f"unknown vertex label {label!r}") from None

    def edges_by_id(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}


@dataclass(frozen=True)
class PerfectMatching:
    """A set of edge ids covering every vertex exactly once."""

    edge_ids: frozenset[int]

    def sorted_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self.edge_ids))


EdgeSpec = Sequence  # (u, v, color_u, color_v[, weight]); u and v are labels or indices


def build_graph(vertex_labels: Sequence[str], edge_specs: Iterable[EdgeSpec]) -> ExperimentGraph:
    """Build a graph from plain tuples, assigning edge ids 0..m-1 in input order.

    Endpoints may be given as vertex labels or as integer indices. The weight
    entry is optional and defaults to 1.
    """
    labels = tuple(str(x) for x in vertex_labels)
    index = {lab: i for i, lab in enumerate(labels)}

    def resolve(endpoint, pos: int):
        if isinstance(endpoint, str):
            if endpoint not in index:
                raise ValueError(f"edge {pos}: unknown vertex label {endpoint!r}")
            return index[endpoint]
        return int(endpoint)

    edges = []
    for pos, spec in enumerate(edge_specs):
        spec = tuple(spec)
        if len(spec) == 4:
            u, v, cu, cv = spec
            w = 1.0 + 0.0j
        elif len(spec) == 5:
            u, v, cu, cv, w = spec
        else:
            raise ValueError(f"edge {pos}: expected 4 or 5 entries, got {len(spec)}")
        edges.append(
            Edge(
                id=pos,
                u=resolve(u, pos),
                v=resolve(v, pos),
                color_u=int(cu),
                color_v=int(cv),
                weight=complex(w),
            )
        )
    return ExperimentGraph(vertex_labels=labels, edges=tuple(edges))


def enumerate_perfect_matchings(graph: ExperimentGraph) -> list[PerfectMatching]:
    """All perfect matchings, sorted by their sorted edge-id tuples.

    Branches on the lowest-indexed unmatched vertex, so each matching is
    visited exactly once. An odd vertex count has no perfect matchings.
    """
    n = graph.vertex_count
    if n % 2 == 1:
        return []
    incident: list[list[Edge]] = [[] for _ in range(n)]
    for e in graph.edges:
        incident[e.u].append(e)
        incident[e.v].append(e)

    found: list[tuple[int, ...]] = []
    matched = [False] * n
    chosen: list[int] = []

    def extend(start: int) -> None:
        v = start
        while v < n and matched[v]:
            v += 1
        if v == n:
            found.append(tuple(chosen))
            return
        matched[v] = True
        for e in incident[v]:
            w = e.other(v)
            if matched[w]:
                continue
            matched[w] = True
            chosen.append(e.id)
            extend(v + 1)
            chosen.pop()
            matched[w] = False
        matched[v] = False

    extend(0)
    matchings = [PerfectMatching(frozenset(ids)) for ids in found]
    matchings.sort(key=lambda m: m.sorted_ids())
    return matchings


def is_perfect_matching(
    graph: ExperimentGraph, edge_ids: PerfectMatching | Iterable[int]
) -> bool:
    """True iff the given edges cover every vertex exactly once."""
    if isinstance(edge_ids, PerfectMatching):
        edge_ids = edge_ids.edge_ids
    by_id = graph.edges_by_id()
    degree = [0] * graph.vertex_count
    for eid in edge_ids:
        if eid not in by_id:
            raise ValueError(f"unknown edge id {eid}")
        e = by_id[eid]
        degree[e.u] += 1
        degree[e.v] += 1
    return all(d == 1 for d in degree)


def max_disjoint_perfect_matchings(
    graph: ExperimentGraph,
) -> tuple[int, tuple[PerfectMatching, ...]]:
    """Maximum set of independent perfect matchings, found by exact search.

    Two matchings are independent when they share no path pair: parallel
    edges between the same two vertices count as a shared pair, because the
    post-selected state cannot tell which of the two crystals fired. Under
    this notion a four-vertex graph never has more than three independent
    matchings (one per way of splitting four paths into two pairs), which is
    what bounds the reachable GHZ dimension and the rank-vector feasibility
    arguments downstream.
    """
    matchings = enumerate_perfect_matchings(graph)
    if not matchings:
        return 0, ()
    by_id = graph.edges_by_id()
    pairsets = [frozenset(by_id[eid].pair() for eid in m.edge_ids) for m in matchings]
    all_pairs = frozenset().union(*pairsets)
    per_matching = graph.vertex_count // 2

    best: list[int] = []

    def extend(start: int, chosen: list[int], used: frozenset) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        capacity = len(all_pairs - used) // per_matching
        if len(chosen) + min(len(matchings) - start, capacity) <= len(best):
            return
        for j in range(start, len(matchings)):
            if len(chosen) + (len(matchings) - j) <= len(best):
                break
            if used.isdisjoint(pairsets[j]):
                chosen.append(j)
                extend(j + 1, chosen, used | pairsets[j])
                chosen.pop()

    extend(0, [], frozenset())
    witness = tuple(matchings[j] for j in best)
    return len(best), witness


def reweighted(graph: ExperimentGraph, weights: Mapping[int, complex]) -> ExperimentGraph:
    """Copy of the graph with the listed edge weights replaced."""
    by_id = graph.edges_by_id()
    for eid in weights:
        if eid not in by_id:
            raise ValueError(f"unknown edge id {eid}")
    new_edges = tuple(
        Edge(e.id, e.u, e.v, e.color_u, e.color_v, complex(weights.get(e.id, e.weight)))
        for e in graph.edges
    )
    return ExperimentGraph(vertex_labels=graph.vertex_labels, edges=new_edges)
