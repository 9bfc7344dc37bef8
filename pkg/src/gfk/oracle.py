"""Dense statevector oracle for desk-scale verification.

Qubit ``i`` is vertex ``i`` and vertex 0 is the most significant bit of the
amplitude index. The cap on qubit count defaults to 14 and can be raised with
the ``GFK_MAX_QUBITS`` environment variable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from gfk import kernels
from gfk.graph import (
    Ancilla,
    GraphState,
    apply_cz,
    attach_ancilla,
    local_complement,
    measure_z,
    neighborhood,
    swap_vertices,
)

DEFAULT_MAX_QUBITS = 14
_SQRT1_2 = 1 / np.sqrt(2)
_PHASE_PLUS = np.exp(1j * np.pi / 4)
_PHASE_MINUS = np.exp(-1j * np.pi / 4)
_RX = np.array([[1, -1j], [-1j, 1]], dtype=np.complex128) * _SQRT1_2
_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) * _SQRT1_2


class OracleError(ValueError):
    pass


class CapacityError(OracleError):
    """State would exceed the configured qubit cap."""


def max_qubits() -> int:
    raw = os.environ.get("GFK_MAX_QUBITS")
    if raw is None:
        return DEFAULT_MAX_QUBITS
    try:
        return int(raw)
    except ValueError:
        raise OracleError(f"GFK_MAX_QUBITS must be an integer, got {raw!r}") from None


@dataclass(frozen=True, eq=False)
class StateVector:
    qubit_count: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if self.amplitudes.shape != (1 << self.qubit_count,):
            raise OracleError(
                f"expected {1 << self.qubit_count} amplitudes, got shape {self.amplitudes.shape}"
            )

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def to_json(self) -> list[list[float]]:
        return [[float(z.real), float(z.imag)] for z in self.amplitudes]

    def _split(self, a: int) -> np.ndarray:
        # View with qubit ``a`` as the middle axis.
        return self.amplitudes.reshape(1 << a, 2, 1 << (self.qubit_count - a - 1))

    def _check(self, *qubits: int) -> None:
        for q in qubits:
            if not 0 <= q < self.qubit_count:
                raise OracleError(f"qubit {q} out of range for {self.qubit_count}-qubit state")


@dataclass(frozen=True)
class StabilizerGenerator:
    x_support: frozenset[int]
    z_support: frozenset[int]
    sign: int = 1


def stabilizer_generators(g: GraphState) -> list[StabilizerGenerator]:
    return [StabilizerGenerator(frozenset([a]), neighborhood(g, a)) for a in range(g.n)]


def _check_size(n: int) -> None:
    cap = max_qubits()
    if n > cap:
        raise CapacityError(f"{n} qubits exceeds the oracle cap of {cap} (set GFK_MAX_QUBITS)")


def build_graph_state(g: GraphState) -> StateVector:
    """Apply CZ on every edge to the uniform superposition."""
    _check_size(g.n)
    parity = kernels.graph_state_parity(g.rows, g.n)
    amps = (1.0 - 2.0 * parity.astype(np.float64)) * (2.0 ** (-g.n / 2))
    return StateVector(g.n, amps.astype(np.complex128))


def plus_state(n: int) -> StateVector:
    _check_size(n)
    return StateVector(n, np.full(1 << n, 2.0 ** (-n / 2), dtype=np.complex128))


def apply_single(psi: StateVector, a: int, u: np.ndarray) -> StateVector:
    psi._check(a)
    out = psi.amplitudes.copy()
    kernels.apply_1q(out, psi.qubit_count, a, u)
    return StateVector(psi.qubit_count, out)


def apply_pauli_z(psi: StateVector, a: int) -> StateVector:
    psi._check(a)
    out = psi.amplitudes.copy()
    kernels.apply_diag(out, psi.qubit_count, a, 1.0, -1.0)
    return StateVector(psi.qubit_count, out)


def apply_pauli_x(psi: StateVector, a: int) -> StateVector:
    psi._check(a)
    out = psi._split(a)[:, ::-1, :].reshape(-1).copy()
    return StateVector(psi.qubit_count, out)


def apply_hadamard(psi: StateVector, a: int) -> StateVector:
    return apply_single(psi, a, _H)


def apply_cz_state(psi: StateVector, a: int, b: int) -> StateVector:
    psi._check(a, b)
    if a == b:
        raise OracleError(f"CZ needs two distinct qubits, got ({a}, {a})")
    out = psi.amplitudes.copy()
    kernels.apply_cz(out, psi.qubit_count, a, b)
    return StateVector(psi.qubit_count, out)


def apply_swap(psi: StateVector, a: int, b: int) -> StateVector:
    psi._check(a, b)
    if a == b:
        return psi
    n = psi.qubit_count
    t = psi.amplitudes.reshape((2,) * n)
    out = np.ascontiguousarray(np.swapaxes(t, a, b)).reshape(-1)
    return StateVector(n, out)


def apply_lc_unitary(psi: StateVector, a: int, neighbors: Iterable[int]) -> StateVector:
    """Apply ``exp(-i pi/4 X_a) prod_b exp(+i pi/4 Z_b)`` over the neighbors ``b``."""
    psi._check(a)
    out = apply_single(psi, a, _RX)
    amps = out.amplitudes
    for b in neighbors:
        psi._check(b)
        if b == a:
            raise OracleError(f"vertex {a} cannot be its own neighbor")
        kernels.apply_diag(amps, psi.qubit_count, b, _PHASE_PLUS, _PHASE_MINUS)
    return StateVector(psi.qubit_count, amps)


def project_z(psi: StateVector, a: int, outcome: int) -> tuple[StateVector, float]:
    """Project qubit ``a`` onto ``|outcome>`` and renormalize."""
    psi._check(a)
    if outcome not in (0, 1):
        raise OracleError(f"outcome must be 0 or 1, got {outcome!r}")
    out = psi.amplitudes.copy()
    kernels.apply_diag(out, psi.qubit_count, a, 1.0 - outcome, float(outcome))
    prob = float(np.vdot(out, out).real)
    if prob < 1e-12:
        raise OracleError(f"outcome {outcome} on qubit {a} has zero probability")
    return StateVector(psi.qubit_count, out / np.sqrt(prob)), prob


def stabilizer_check(psi: StateVector, g: GraphState, tol: float = 1e-10) -> bool:
    """True iff every generator ``X_a prod Z_b`` fixes ``psi``."""
    if psi.qubit_count != g.n:
        raise OracleError(f"state has {psi.qubit_count} qubits, graph has {g.n} vertices")
    for a in range(g.n):
        phi = apply_pauli_x(psi, a)
        for b in neighborhood(g, a):
            phi = apply_pauli_z(phi, b)
        if np.max(np.abs(phi.amplitudes - psi.amplitudes), initial=0.0) > tol:
            return False
    return True


def entanglement_entropy(psi: StateVector, side_a: Iterable[int]) -> float:
    """Von Neumann entropy in bits of the reduced state on ``side_a``."""
    n = psi.qubit_count
    a_side = sorted(set(side_a))
    psi._check(*a_side)
    if not a_side or len(a_side) == n:
        return 0.0
    b_side = [q for q in range(n) if q not in set(a_side)]
    t = psi.amplitudes.reshape((2,) * n).transpose(a_side + b_side)
    mat = t.reshape(1 << len(a_side), 1 << len(b_side))
    s = np.linalg.svd(mat, compute_uv=False)
    p = s**2
    p = p[p > 1e-15]
    return float(-(p * np.log2(p)).sum())


def overlap(psi: StateVector, phi: StateVector) -> float:
    if psi.qubit_count != phi.qubit_count:
        raise OracleError(f"dimension mismatch: {psi.qubit_count} vs {phi.qubit_count} qubits")
    return float(abs(np.vdot(psi.amplitudes, phi.amplitudes)))


def equal_up_to_global_phase(psi: StateVector, phi: StateVector, tol: float = 1e-10) -> bool:
    return overlap(psi, phi) >= 1 - tol


def tensor(psi: StateVector, phi: StateVector) -> StateVector:
    n = psi.qubit_count + phi.qubit_count
    _check_size(n)
    return StateVector(n, np.kron(psi.amplitudes, phi.amplitudes))


def execute_transcript_state(psi: StateVector, transcript, graph: GraphState) -> StateVector:
    """Replay a fission transcript on ``psi`` with exact unitaries and projections.

    ``graph`` is the graph ``psi`` represents; it supplies the neighborhoods the
    local-complementation unitaries act on. Corrections are applied as they
    appear. A measured qubit is afterwards re-prepared in ``|+>`` so the result
    is comparable with the isolated vertex the graph rewrite leaves behind.
    """
    if psi.qubit_count != graph.n:
        raise OracleError(f"state has {psi.qubit_count} qubits, graph has {graph.n} vertices")
    g = graph
    for step in transcript.steps:
        op = step.op
        if op == "attach_ancilla":
            kind, hosts = step.args
            anc = Ancilla.from_kind(kind, len(hosts))
            g2, new = attach_ancilla(g, anc, hosts)
            sub = GraphState(anc.size, tuple(r >> g.n for r in g2.rows[g.n:]))
            psi = tensor(psi, build_graph_state(sub))
            g = g2
        elif op == "cz":
            a, b = step.args
            psi = apply_cz_state(psi, a, b)
            g = apply_cz(g, a, b)
        elif op == "local_complement":
            (a,) = step.args
            psi = apply_lc_unitary(psi, a, neighborhood(g, a))
            g = local_complement(g, a)
        elif op == "measure_z":
            (a,) = step.args
            psi, _ = project_z(psi, a, step.outcome)
            g, _ = measure_z(g, a, step.outcome)
            if step.outcome:
                psi = apply_pauli_x(psi, a)
            psi = apply_hadamard(psi, a)
        elif op == "correction":
            for b in step.args[0]:
                psi = apply_pauli_z(psi, b)
        elif op == "swap":
            a, b = step.args
            psi = apply_swap(psi, a, b)
            g = swap_vertices(g, a, b)
        else:
            raise OracleError(f"unknown transcript op {op!r}")
    return psi


def verify_transcript(graph: GraphState, transcript, final: GraphState | None = None) -> float:
    """Overlap between the replayed state and the graph state of the final graph."""
    from gfk.fission import replay_transcript

    if final is None:
        final = replay_transcript(graph, transcript)
    psi = execute_transcript_state(build_graph_state(graph), transcript, graph)
    return overlap(psi, build_graph_state(final))
