"""Entanglement accounting over GF(2) and LC-orbit resource search."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from gfk import kernels
from gfk.fission import FissionError, FissionOutcome, FissionSpec, Step, Transcript, execute_fission
from gfk.graph import GraphState, _bits, _mask, canonical_key, is_connected, local_complement, neighborhood, GHZ, PLUS


@dataclass(frozen=True)
class Bipartition:
    side_a: frozenset[int]

    def side_b(self, n: int) -> frozenset[int]:
        return frozenset(range(n)) - self.side_a


def _side_mask(g: GraphState, side: Bipartition | Iterable[int]) -> int:
    if isinstance(side, Bipartition):
        side = side.side_a
    mask = 0
    for v in side:
        g.check_vertex(v)
        mask |= 1 << v
    return mask


def cut_rank(g: GraphState, side: Bipartition | Iterable[int]) -> int:
    """Ebits across ``(A, V \\ A)``: GF(2) rank of the off-diagonal adjacency block."""
    return kernels.cut_rank(g.rows, _side_mask(g, side))


def check_one_uniform(g: GraphState) -> bool:
    """Connected, and every single vertex carries exactly one ebit."""
    if not is_connected(g):
        return False
    return all(cut_rank(g, [v]) == 1 for v in range(g.n))


@dataclass(frozen=True)
class FissionAudit:
    pre_ebits_target: int
    post_ebits_node: int
    ancilla_ebits_supplied: int

    @property
    def satisfied(self) -> bool:
        return self.post_ebits_node - self.pre_ebits_target <= self.ancilla_ebits_supplied

    def as_tuple(self) -> tuple[int, int, int, bool]:
        return (self.pre_ebits_target, self.post_ebits_node, self.ancilla_ebits_supplied, self.satisfied)

    def to_json(self) -> dict:
        return {
            "pre": self.pre_ebits_target,
            "post": self.post_ebits_node,
            "ancilla": self.ancilla_ebits_supplied,
            "satisfied": self.satisfied,
        }


def audit_fission(g_pre: GraphState, outcome: FissionOutcome, target: int) -> FissionAudit:
    """Compare the node's cut rank before and after fission with the ancilla supplied.

    The node after fission is ``target`` plus every split-off vertex; one
    ancilla ebit is credited per fission round.
    """
    g_pre.check_vertex(target)
    post = outcome.graph
    if post.n < g_pre.n or not outcome.new_vertices:
        raise FissionError("fission outcome does not extend the given input graph")
    for v in outcome.new_vertices:
        post.check_vertex(v)
    node = {target, *outcome.new_vertices}
    return FissionAudit(cut_rank(g_pre, [target]), cut_rank(post, node), outcome.rounds)


def ghz_cost(kept_size: int, rest_size: int) -> int:
    """GHZ qubit count the fission plan needs; 2 means a Bell pair."""
    return min(kept_size, rest_size) + 1


@dataclass(frozen=True)
class OrbitResult:
    representative: GraphState
    lc_sequence: tuple[int, ...]
    kept_image: frozenset[int]
    ancilla_cost_before: int
    ancilla_cost_after: int
    nodes_explored: int
    exhausted: bool
    greedy_steps: int = 0

    def to_json(self) -> dict:
        return {
            "lc_sequence": list(self.lc_sequence),
            "kept_image": sorted(self.kept_image),
            "cost_before": self.ancilla_cost_before,
            "cost_after": self.ancilla_cost_after,
            "nodes_explored": self.nodes_explored,
            "exhausted": self.exhausted,
            "greedy_steps": self.greedy_steps,
        }


def _lc_move(rows: Sequence[int], target: int, kept: int, b: int, include_target: bool):
    """Apply LC at ``b`` and map the kept side. ``None`` if the split is not preserved.

    LC at a kept neighbor toggles the kept side by ``N(b) - target``; at a
    non-kept neighbor it toggles the other side. Either move is only allowed
    when it leaves the two sides disjoint, which keeps the fission on the
    complemented graph undoable by replaying the same LCs in reverse.
    """
    tbit = 1 << target
    nt = rows[target]
    if b == target:
        if not include_target:
            return None
        return kernels.local_complement(rows, b), kept
    if nt >> b & 1:
        delta = rows[b] & ~tbit
        rest = nt & ~kept
        if kept >> b & 1:
            if delta & rest:
                return None
            kept ^= delta
        elif delta & kept:
            return None
    return kernels.local_complement(rows, b), kept


def _cost(rows: Sequence[int], target: int, kept: int) -> int:
    nt = rows[target]
    return ghz_cost(kept.bit_count(), (nt & ~kept).bit_count())


def minimize_resources(
    g: GraphState,
    target: int,
    kept: Iterable[int],
    budget: int = 100_000,
    include_target: bool = False,
) -> OrbitResult:
    """Breadth-first search of the LC orbit for a cheaper fission plan.

    Generators are local complementations at vertices other than ``target``
    (``include_target`` widens this). States are deduplicated on the graph
    key plus the image of the kept side. The first state reaching the best
    cost wins, which gives the shortest, then lexicographically smallest,
    sequence. When ``budget`` expansions run out the search stops and a
    greedy descent continues from the best state found.
    """
    g.check_vertex(target)
    if budget < 1:
        raise ValueError(f"budget must be at least 1, got {budget}")
    kept_set = frozenset(int(k) for k in kept)
    nb = neighborhood(g, target)
    if not kept_set <= nb:
        raise FissionError(f"kept vertices {sorted(kept_set - nb)} are not neighbors of {target}")
    kmask = _mask(kept_set)
    start = (g.rows, kmask)
    cost0 = _cost(g.rows, target, kmask)
    best = (cost0, (), g.rows, kmask)
    seen = {(canonical_key(g), kmask)}
    queue = deque([(g.rows, kmask, ())])
    explored = 0
    exhausted = True
    while queue:
        if explored >= budget:
            exhausted = False
            break
        rows, km, seq = queue.popleft()
        explored += 1
        for b in range(g.n):
            moved = _lc_move(rows, target, km, b, include_target)
            if moved is None:
                continue
            nrows, nkm = moved
            nrows = tuple(nrows)
            key = ((g.n, nrows), nkm)
            if key in seen:
                continue
            seen.add(key)
            nseq = seq + (b,)
            c = _cost(nrows, target, nkm)
            if c < best[0]:
                best = (c, nseq, nrows, nkm)
            queue.append((nrows, nkm, nseq))

    greedy = 0
    if not exhausted:
        cost, seq, rows, km = best
        improved = True
        while improved:
            improved = False
            for b in range(g.n):
                moved = _lc_move(rows, target, km, b, include_target)
                if moved is None:
                    continue
                nrows, nkm = tuple(moved[0]), moved[1]
                c = _cost(nrows, target, nkm)
                if c < cost:
                    cost, seq, rows, km = c, seq + (b,), nrows, nkm
                    greedy += 1
                    improved = True
                    break
        best = (cost, seq, rows, km)

    cost, seq, rows, km = best
    rep = GraphState(g.n, tuple(rows), g.labels)
    return OrbitResult(rep, seq, frozenset(_bits(km)), cost0, cost, explored, exhausted, greedy)


def replay_lc(g: GraphState, sequence: Iterable[int]) -> GraphState:
    for v in sequence:
        g = local_complement(g, v)
    return g


def fission_via_orbit(
    g: GraphState,
    target: int,
    kept: Iterable[int],
    outcomes: Sequence[int] | None = None,
    budget: int = 100_000,
) -> tuple[FissionOutcome, OrbitResult]:
    """Fission on the cheapest LC-equivalent graph, then undo the LCs.

    The final graph matches a direct fission of ``g`` on every original
    vertex and on the split-off qubit; only the ancilla count differs.
    """
    orbit = minimize_resources(g, target, kept, budget)
    g2 = replay_lc(g, orbit.lc_sequence)
    nb = neighborhood(g2, target)
    k2 = orbit.kept_image
    rest = nb - k2
    swapped = len(rest) < len(k2)
    side = min(len(k2), len(rest))
    spec = FissionSpec(target, k2, rest, PLUS if side == 0 else GHZ(side + 1), swapped)
    res = execute_fission(g2, spec, outcomes)
    post = replay_lc(res.graph, reversed(orbit.lc_sequence))
    pre_steps = tuple(Step("local_complement", (v,)) for v in orbit.lc_sequence)
    post_steps = tuple(Step("local_complement", (v,)) for v in reversed(orbit.lc_sequence))
    t = Transcript(pre_steps + res.transcript.steps + post_steps, res.transcript.new_vertices)
    outcome = FissionOutcome(
        post, t, res.ancilla_qubits_used, res.ancilla_ebits_used, res.rounds, res.degenerate, res.corrections
    )
    return outcome, orbit
