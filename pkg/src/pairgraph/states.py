"""Post-selected states of pair-source graphs and tools to compare them.

A term is one ket in the computational basis, written as a tuple of mode
numbers, one per party. The state of a graph collects one amplitude per
distinct term: each perfect matching contributes the product of its edge
weights to the term that reads off, at every vertex, the color of the
matching edge covering it. Matchings landing on the same term add
coherently.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from .errors import UnrealizableError
from .graphs import ExperimentGraph, enumerate_perfect_matchings
from .targets import AME, GHZ, SRV, Dicke, TargetSpec, W

__all__ = [
    "AMPLITUDE_PRUNE",
    "QuantumState",
    "Term",
    "state_from_graph",
    "state_from_terms",
    "normalize",
    "states_equal",
    "is_maximally_entangled",
    "schmidt_rank_vector",
    "strip_trigger",
    "reference_state",
    "classify",
]

Term = tuple[int, ...]

AMPLITUDE_PRUNE = 1e-12
RANK_TOL = 1e-9
EQUAL_TOL = 1e-9


@dataclass(frozen=True)
class QuantumState:
    """Sparse multi-party state: mapping from term to complex amplitude.

    Terms with |amplitude| below AMPLITUDE_PRUNE are dropped at construction,
    so fully destructive interference leaves no residue. Terms are stored in
    sorted order and the mapping is read-only.
    """

    party_count: int
    amplitudes: Mapping[Term, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.party_count < 1:
            raise ValueError("party_count must be at least 1")
        cleaned: dict[Term, complex] = {}
        for term in sorted(self.amplitudes):
            amp = complex(self.amplitudes[term])
            if len(term) != self.party_count:
                raise ValueError(
                    f"term {term} has {len(term)} entries, expected {self.party_count}"
                )
            if any(m < 0 for m in term):
                raise ValueError(f"term {term} has a negative mode number")
            if abs(amp) >= AMPLITUDE_PRUNE:
                cleaned[tuple(int(m) for m in term)] = amp
        object.__setattr__(self, "amplitudes", MappingProxyType(cleaned))

    @property
    def term_count(self) -> int:
        return len(self.amplitudes)

    def terms(self) -> tuple[Term, ...]:
        return tuple(self.amplitudes)

    def norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self.amplitudes.values()))

    def local_dimensions(self) -> tuple[int, ...]:
        """Per-party mode count, counting the distinct modes that appear."""
        dims = []
        for p in range(self.party_count):
            dims.append(len({t[p] for t in self.amplitudes}))
        return tuple(dims)


def state_from_terms(party_count: int, entries: Iterable[tuple[Term, complex]]) -> QuantumState:
    """Accumulate (term, amplitude) pairs coherently into a state."""
    acc: dict[Term, complex] = {}
    for term, amp in entries:
        key = tuple(int(m) for m in term)
        acc[key] = acc.get(key, 0.0 + 0.0j) + complex(amp)
    return QuantumState(party_count=party_count, amplitudes=acc)


def state_from_graph(graph: ExperimentGraph) -> QuantumState:
    """Post-selected n-fold coincidence state of the graph.

    Sums the weight products of all perfect matchings, grouped by the term
    each matching produces. The result is not normalized.
    """
    n = graph.vertex_count
    by_id = graph.edges_by_id()
    entries = []
    for m in enumerate_perfect_matchings(graph):
        term = [0] * n
        amp = 1.0 + 0.0j
        for eid in m.edge_ids:
            e = by_id[eid]
            term[e.u] = e.color_u
            term[e.v] = e.color_v
            amp *= e.weight
        entries.append((tuple(term), amp))
    return state_from_terms(n, entries)


def normalize(state: QuantumState) -> QuantumState:
    """Unit-norm copy; rejects a state with no surviving terms."""
    nrm = state.norm()
    if nrm < AMPLITUDE_PRUNE:
        raise ValueError("cannot normalize a state with zero norm")
    return QuantumState(
        party_count=state.party_count,
        amplitudes={t: a / nrm for t, a in state.amplitudes.items()},
    )


def states_equal(a: QuantumState, b: QuantumState, tol: float = EQUAL_TOL) -> bool:
    """Equality up to normalization and one global phase."""
    if a.party_count != b.party_count:
        return False
    an = normalize(a)
    bn = normalize(b)
    if an.terms() != bn.terms():
        return False
    # Align the global phase on the largest-magnitude term of the first state.
    anchor = max(an.amplitudes, key=lambda t: abs(an.amplitudes[t]))
    if abs(bn.amplitudes[anchor]) < AMPLITUDE_PRUNE:
        return False
    phase = an.amplitudes[anchor] / bn.amplitudes[anchor]
    phase /= abs(phase)
    return all(
        abs(an.amplitudes[t] - phase * bn.amplitudes[t]) <= tol for t in an.amplitudes
    )


def is_maximally_entangled(state: QuantumState, tol: float = EQUAL_TOL) -> bool:
    """True when all amplitudes share one magnitude and the terms are distinct.

    Distinctness is per party pair left implicit: a state written in the term
    basis always has distinct terms, so the check reduces to equal moduli.
    """
    if state.term_count == 0:
        return False
    mags = [abs(a) for a in state.amplitudes.values()]
    ref = mags[0]
    return all(abs(m - ref) <= tol * max(ref, 1.0) for m in mags)


def schmidt_rank_vector(state: QuantumState) -> tuple[int, ...]:
    """Ranks of the single-party reductions, sorted non-increasing.

    Builds, for every party, the matrix M[local mode, joint mode of the rest]
    of amplitudes and counts singular values above RANK_TOL relative to the
    largest. Needs a normalized state with at least two parties.
    """
    if state.party_count < 2:
        raise ValueError("rank vector needs at least two parties")
    if state.term_count == 0:
        raise ValueError("rank vector of an empty state is undefined")
    if abs(state.norm() - 1.0) > EQUAL_TOL:
        raise ValueError("rank vector needs a normalized state")
    ranks = []
    for p in range(state.party_count):
        local = sorted({t[p] for t in state.amplitudes})
        rest = sorted({t[:p] + t[p + 1 :] for t in state.amplitudes})
        lidx = {m: i for i, m in enumerate(local)}
        ridx = {r: i for i, r in enumerate(rest)}
        mat = np.zeros((len(local), len(rest)), dtype=complex)
        for t, a in state.amplitudes.items():
            mat[lidx[t[p]], ridx[t[:p] + t[p + 1 :]]] = a
        sigma = np.linalg.svd(mat, compute_uv=False)
        top = sigma[0] if len(sigma) else 0.0
        ranks.append(int(np.sum(sigma > RANK_TOL * max(top, 1e-300))))
    return tuple(sorted(ranks, reverse=True))


def strip_trigger(state: QuantumState, party: int = -1) -> QuantumState:
    """Drop one party whose mode is the same in every term.

    The dropped party acts as a heralding detector: it fires in a fixed mode,
    so removing it is a projection that keeps every amplitude. Raises if the
    party's mode varies across terms.
    """
    if state.party_count < 2:
        raise ValueError("cannot strip the only party")
    p = party % state.party_count
    modes = {t[p] for t in state.amplitudes}
    if len(modes) > 1:
        raise ValueError(f"party {p} is not constant across terms: modes {sorted(modes)}")
    return QuantumState(
        party_count=state.party_count - 1,
        amplitudes={t[:p] + t[p + 1 :]: a for t, a in state.amplitudes.items()},
    )


def reference_state(spec: TargetSpec) -> QuantumState:
    """Canonical normalized form of a named target state."""
    if isinstance(spec, GHZ):
        amp = 1.0 / math.sqrt(spec.d)
        return QuantumState(
            party_count=spec.n,
            amplitudes={(i,) * spec.n: amp for i in range(spec.d)},
        )
    if isinstance(spec, W):
        return reference_state(Dicke(spec.n, 1))
    if isinstance(spec, Dicke):
        combos = list(itertools.combinations(range(spec.n), spec.m))
        amp = 1.0 / math.sqrt(len(combos))
        amplitudes = {}
        for ones in combos:
            term = tuple(1 if p in ones else 0 for p in range(spec.n))
            amplitudes[term] = amp
        return QuantumState(party_count=spec.n, amplitudes=amplitudes)
    if isinstance(spec, AME):
        if spec.parties != 3:
            raise UnrealizableError(
                f"no reference construction for AME({spec.parties},{spec.d}) here; "
                "only the three-party family is provided"
            )
        amp = 1.0 / spec.d
        amplitudes = {}
        for i in range(spec.d):
            for j in range(spec.d):
                amplitudes[(i, j, (i + j) % spec.d)] = amp
        return QuantumState(party_count=3, amplitudes=amplitudes)
    if isinstance(spec, SRV):
        raise ValueError("a rank vector names a class of states, not one reference state")
    raise TypeError(f"unknown target spec {spec!r}")


def classify(state: QuantumState) -> TargetSpec | None:
    """Recognize a state as GHZ, W, or a Dicke state up to local relabeling.

    Works on maximally entangled states only (all amplitudes equal in
    modulus and in phase after removing one global phase). Returns None when
    no family matches.
    """
    if state.term_count == 0:
        return None
    sn = normalize(state)
    amps = list(sn.amplitudes.values())
    phase = amps[0] / abs(amps[0])
    expected = abs(amps[0])
    for a in amps:
        if abs(a - phase * expected) > EQUAL_TOL:
            return None

    n = sn.party_count
    terms = sn.terms()
    k = len(terms)

    # GHZ: k terms, every party showing k distinct modes, one per term.
    if k >= 2 and n >= 2:
        if all(len({t[p] for t in terms}) == k for p in range(n)):
            return GHZ(n=n, d=k)

    # Dicke: every party has exactly two modes; check each candidate m.
    if n >= 2 and all(len({t[p] for t in terms}) == 2 for p in range(n)):
        spec = _match_dicke(terms, n)
        if spec is not None:
            return spec
    return None


def _match_dicke(terms: tuple[Term, ...], n: int) -> TargetSpec | None:
    term_set = set(terms)
    k = len(terms)
    for m in range(1, n):
        if math.comb(n, m) != k:
            continue
        relabeled = _orient_dicke(term_set, n, m)
        if relabeled is not None:
            if m == 1:
                return W(n=n)
            return Dicke(n=n, m=m)
    return None


def _orient_dicke(term_set: set[Term], n: int, m: int) -> set[Term] | None:
    """Try to relabel each party's two modes so the terms become weight-m strings.

    In a Dicke state with m excitations the excited mode appears in
    C(n-1, m-1) of the terms at any given party and the ground mode in
    C(n-1, m). When m == n/2 those counts tie, so the orientation is fixed
    pairwise instead: two excited modes coincide in C(n-2, m-2) terms while
    an excited-ground pair coincides in C(n-2, m-1); party 0 is tried both
    ways and the rest follow.
    """
    count_excited = math.comb(n - 1, m - 1)
    count_ground = math.comb(n - 1, m)
    party_modes = [sorted({t[p] for t in term_set}) for p in range(n)]

    if count_excited != count_ground:
        excited = []
        for p in range(n):
            counts = {mode: 0 for mode in party_modes[p]}
            for t in term_set:
                counts[t[p]] += 1
            hit = [mode for mode, c in counts.items() if c == count_excited]
            miss = [mode for mode, c in counts.items() if c == count_ground]
            if len(hit) != 1 or len(miss) != 1:
                return None
            excited.append(hit[0])
        return _check_orientation(term_set, n, m, excited)

    # m == n/2: counts tie; fix party 0 both ways and propagate pairwise.
    if m < 2:
        return None
    both = math.comb(n - 2, m - 2)
    mixed = math.comb(n - 2, m - 1)
    for e0 in party_modes[0]:
        excited = [e0]
        ok = True
        for p in range(1, n):
            assignment = None
            for cand in party_modes[p]:
                coincide = sum(1 for t in term_set if t[0] == e0 and t[p] == cand)
                if coincide == both:
                    assignment = cand
                    break
                if coincide == mixed:
                    other = [x for x in party_modes[p] if x != cand]
                    if len(other) == 1:
                        assignment = other[0]
                        break
            if assignment is None:
                ok = False
                break
            excited.append(assignment)
        if ok:
            result = _check_orientation(term_set, n, m, excited)
            if result is not None:
                return result
    return None


def _check_orientation(
    term_set: set[Term], n: int, m: int, excited: list[int]
) -> set[Term] | None:
    relabeled = {tuple(1 if t[p] == excited[p] else 0 for p in range(n)) for t in term_set}
    wanted = {
        tuple(1 if p in ones else 0 for p in range(n))
        for ones in itertools.combinations(range(n), m)
    }
    return relabeled if relabeled == wanted else None
