"""Fission protocols: split one graph-state qubit into two.

The split-off qubit ``v'`` ends adjacent to the chosen neighbor set and the
original qubit ``v`` keeps the rest. A GHZ star (a Bell pair for a single
neighbor) supplies the extra ebit; every measured vertex is an ancilla.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from gfk.graph import (
    BELL,
    PLUS,
    Ancilla,
    GraphError,
    GraphState,
    GHZ,
    apply_cz,
    attach_ancilla,
    local_complement,
    measure_z,
    neighborhood,
    swap_vertices,
)


class FissionError(ValueError):
    pass


@dataclass(frozen=True)
class Step:
    op: str
    args: tuple
    outcome: int | None = None
    corrections: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        out: dict = {"op": self.op, "args": [list(a) if isinstance(a, tuple) else a for a in self.args]}
        if self.outcome is not None:
            out["outcome"] = self.outcome
            out["corrections"] = list(self.corrections or ())
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Step":
        try:
            op = obj["op"]
            args = tuple(tuple(a) if isinstance(a, list) else a for a in obj["args"])
        except (KeyError, TypeError) as exc:
            raise FissionError(f"malformed transcript step {obj!r}: missing {exc}") from None
        if op == "measure_z":
            if obj.get("outcome") not in (0, 1):
                raise FissionError(f"measure_z step needs outcome 0 or 1: {obj!r}")
            return cls(op, args, obj["outcome"], tuple(obj.get("corrections", ())))
        return cls(op, args)


@dataclass(frozen=True)
class Transcript:
    steps: tuple[Step, ...] = ()
    new_vertices: tuple[int, ...] = ()

    @property
    def new_vertex(self) -> int | None:
        return self.new_vertices[-1] if self.new_vertices else None

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.steps]

    @classmethod
    def from_json(cls, steps: list[dict]) -> "Transcript":
        if not isinstance(steps, list):
            raise FissionError("transcript must be a JSON array of step objects")
        return cls(tuple(Step.from_json(s) for s in steps))

    def __add__(self, other: "Transcript") -> "Transcript":
        return Transcript(self.steps + other.steps, self.new_vertices + other.new_vertices)


@dataclass(frozen=True)
class FissionSpec:
    """What to split and with which ancilla.

    ``kept`` always ends on the new vertex. When ``swapped`` is set the
    protocol physically moves ``rest`` (the smaller side) and then exchanges
    the roles of the two co-located qubits.
    """

    target: int
    kept: frozenset[int]
    rest: frozenset[int]
    ancilla: Ancilla
    swapped: bool = False

    @property
    def moved(self) -> frozenset[int]:
        return self.rest if self.swapped else self.kept

    @property
    def degenerate(self) -> bool:
        return not self.kept or not self.rest


@dataclass(frozen=True)
class FissionOutcome:
    graph: GraphState
    transcript: Transcript
    ancilla_qubits_used: int
    ancilla_ebits_used: int
    rounds: int = 1
    degenerate: bool = False
    corrections: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def new_vertex(self) -> int:
        return self.transcript.new_vertex

    @property
    def new_vertices(self) -> tuple[int, ...]:
        return self.transcript.new_vertices


def _ancilla_for(size: int) -> Ancilla:
    return PLUS if size == 0 else GHZ(size + 1)


def plan_fission(g: GraphState, target: int, kept: Iterable[int]) -> FissionSpec:
    """Pick the smallest ancilla: GHZ sized by the smaller neighbor side."""
    g.check_vertex(target)
    kept = frozenset(int(k) for k in kept)
    nb = neighborhood(g, target)
    if not kept <= nb:
        raise FissionError(f"kept vertices {sorted(kept - nb)} are not neighbors of {target}")
    rest = nb - kept
    swapped = len(rest) < len(kept)
    side = min(len(kept), len(rest))
    return FissionSpec(target, kept, rest, _ancilla_for(side), swapped)


def _check_spec(g: GraphState, spec: FissionSpec) -> None:
    g.check_vertex(spec.target)
    nb = neighborhood(g, spec.target)
    if spec.kept | spec.rest != nb or spec.kept & spec.rest:
        raise FissionError(
            f"spec sides {sorted(spec.kept)} | {sorted(spec.rest)} do not partition N({spec.target}) = {sorted(nb)}"
        )
    if spec.ancilla.size != len(spec.moved) + 1:
        raise FissionError(
            f"{spec.ancilla.kind} ancilla of size {spec.ancilla.size} cannot move {len(spec.moved)} neighbor(s)"
        )


def execute_fission(g: GraphState, spec: FissionSpec, outcomes: Sequence[int] | None = None) -> FissionOutcome:
    """Run the fission sequence and record every primitive in a transcript.

    ``outcomes`` gives one measurement bit per moved neighbor, in ascending
    neighbor order; ``None`` means all zeros.
    """
    _check_spec(g, spec)
    v = spec.target
    moved = sorted(spec.moved)
    if outcomes is None:
        outcomes = [0] * len(moved)
    outcomes = [int(o) for o in outcomes]
    if len(outcomes) != len(moved):
        raise FissionError(f"expected {len(moved)} measurement outcome(s), got {len(outcomes)}")
    if any(o not in (0, 1) for o in outcomes):
        raise FissionError(f"outcomes must be bits, got {outcomes}")

    steps: list[Step] = []
    hosts = [v] + moved
    g, new = attach_ancilla(g, spec.ancilla, hosts)
    steps.append(Step("attach_ancilla", (spec.ancilla.kind, tuple(hosts))))
    vp, leaves = new[0], new[1:]

    for b, bp in zip(moved, leaves):
        g = apply_cz(g, b, bp)
        steps.append(Step("cz", (b, bp)))
    for bp in leaves:
        g = local_complement(g, bp)
        steps.append(Step("local_complement", (bp,)))
    corrections = []
    for bp, o in zip(leaves, outcomes):
        g, corr = measure_z(g, bp, o)
        steps.append(Step("measure_z", (bp,), o, tuple(corr.sorted())))
        steps.append(Step("correction", (tuple(corr.sorted()),)))
        corrections.append(tuple(corr.sorted()))

    for op in ("cz", "local_complement", "cz", "local_complement"):
        if op == "cz":
            g = apply_cz(g, v, vp)
            steps.append(Step("cz", (v, vp)))
        else:
            g = local_complement(g, vp)
            steps.append(Step("local_complement", (vp,)))
    if spec.swapped:
        g = swap_vertices(g, v, vp)
        steps.append(Step("swap", (v, vp)))

    return FissionOutcome(
        graph=g,
        transcript=Transcript(tuple(steps), (vp,)),
        ancilla_qubits_used=spec.ancilla.size,
        ancilla_ebits_used=spec.ancilla.ebits,
        degenerate=spec.degenerate,
        corrections=tuple(corrections),
    )


def fission(g: GraphState, target: int, kept: Iterable[int], outcomes: Sequence[int] | None = None) -> FissionOutcome:
    return execute_fission(g, plan_fission(g, target, kept), outcomes)


def fission_one_neighbor(g: GraphState, target: int, keep: int, outcome: int = 0) -> FissionOutcome:
    """Split ``target`` so the new qubit carries only ``keep``, using one Bell pair."""
    g.check_vertex(target)
    nb = neighborhood(g, target)
    if keep not in nb:
        raise FissionError(f"{keep} is not a neighbor of {target}")
    spec = FissionSpec(target, frozenset([keep]), nb - {keep}, BELL)
    return execute_fission(g, spec, [outcome])


def iterate_fission(
    g: GraphState,
    target: int,
    partition: Sequence[Iterable[int]],
    outcomes: Sequence[Sequence[int]] | None = None,
) -> FissionOutcome:
    """Split ``target`` into one qubit per block.

    Block ``i < k`` goes to the ``i``-th new vertex and the last block stays
    on ``target``. ``outcomes[i]`` feeds round ``i``.
    """
    g.check_vertex(target)
    blocks = [frozenset(int(x) for x in b) for b in partition]
    if len(blocks) < 2:
        raise FissionError("partition needs at least two blocks")
    nb = neighborhood(g, target)
    union: frozenset[int] = frozenset()
    for b in blocks:
        if union & b:
            raise FissionError(f"partition blocks overlap on {sorted(union & b)}")
        union |= b
    if union != nb:
        raise FissionError(f"partition covers {sorted(union)}, expected N({target}) = {sorted(nb)}")
    k = len(blocks) - 1
    if outcomes is not None and len(outcomes) != k:
        raise FissionError(f"expected outcomes for {k} rounds, got {len(outcomes)}")

    transcript = Transcript()
    qubits = ebits = 0
    degenerate = False
    corrections: tuple[tuple[int, ...], ...] = ()
    for i, block in enumerate(blocks[:-1]):
        spec = plan_fission(g, target, block)
        res = execute_fission(g, spec, None if outcomes is None else outcomes[i])
        g = res.graph
        transcript = transcript + res.transcript
        qubits += res.ancilla_qubits_used
        ebits += res.ancilla_ebits_used
        degenerate |= res.degenerate
        corrections += res.corrections
    return FissionOutcome(g, transcript, qubits, ebits, rounds=k, degenerate=degenerate, corrections=corrections)


def replay_transcript(g: GraphState, transcript: Transcript) -> GraphState:
    """Re-run a transcript at the graph level."""
    for step in transcript.steps:
        op, args = step.op, step.args
        try:
            if op == "attach_ancilla":
                kind, hosts = args
                g, _ = attach_ancilla(g, Ancilla.from_kind(kind, len(hosts)), hosts)
            elif op == "cz":
                g = apply_cz(g, *args)
            elif op == "local_complement":
                g = local_complement(g, *args)
            elif op == "measure_z":
                g, _ = measure_z(g, args[0], step.outcome)
            elif op == "correction":
                pass
            elif op == "swap":
                g = swap_vertices(g, *args)
            else:
                raise FissionError(f"unknown transcript op {op!r}")
        except (TypeError, ValueError) as exc:
            if isinstance(exc, (FissionError, GraphError)):
                raise
            raise FissionError(f"malformed {op} step {step.to_json()}: {exc}") from None
    return g
