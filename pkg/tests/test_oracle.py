import itertools
import random

import numpy as np
import pytest

from gfk.analysis import cut_rank
from gfk.fission import fission, fission_one_neighbor, plan_fission, execute_fission, Transcript
from gfk.graph import apply_cz, local_complement, measure_z, neighborhood, new_graph
from gfk.oracle import (
    CapacityError,
    OracleError,
    StateVector,
    apply_cz_state,
    apply_hadamard,
    apply_lc_unitary,
    apply_pauli_x,
    apply_pauli_z,
    build_graph_state,
    entanglement_entropy,
    equal_up_to_global_phase,
    execute_transcript_state,
    overlap,
    plus_state,
    project_z,
    stabilizer_check,
    stabilizer_generators,
    verify_transcript,
)
from helpers import random_graph

s2 = 1 / np.sqrt(2)


def _random_state(rng, n):
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(n, v / np.linalg.norm(v))


def _ket(bits):
    v = np.zeros(1 << len(bits), dtype=complex)
    v[int("".join(map(str, bits)), 2)] = 1
    return v


def test_single_edge_amplitudes():
    psi = build_graph_state(new_graph(2, [(0, 1)]))
    assert np.allclose(psi.amplitudes, np.array([1, 1, 1, -1]) / 2)


def test_single_vertex_is_plus():
    assert np.allclose(build_graph_state(new_graph(1)).amplitudes, [s2, s2])


def test_ghz_star_matches_ghz_up_to_hadamards():
    star = new_graph(3, [(0, 1), (0, 2)])
    psi = build_graph_state(star)
    for cut in ([0], [1], [2]):
        assert entanglement_entropy(psi, cut) == pytest.approx(1.0, abs=1e-12)
    ghz = (_ket([0, 0, 0]) + _ket([1, 1, 1])) * s2
    phi = apply_hadamard(apply_hadamard(psi, 1), 2)
    assert equal_up_to_global_phase(phi, StateVector(3, ghz))


def test_stabilizer_check_examples():
    rng = random.Random(3)
    for _ in range(20):
        g = random_graph(rng, rng.randint(1, 10))
        assert stabilizer_check(build_graph_state(g), g)
    p3 = new_graph(3, [(0, 1), (1, 2)])
    psi = build_graph_state(p3)
    flipped = psi.amplitudes.copy()
    flipped[3] *= -1
    assert not stabilizer_check(StateVector(3, flipped), p3)
    assert not stabilizer_check(psi, new_graph(3, [(0, 1), (1, 2), (0, 2)]))
    with pytest.raises(OracleError):
        stabilizer_check(psi, new_graph(2))


def test_stabilizer_generators_from_graph():
    gens = stabilizer_generators(new_graph(3, [(0, 1), (1, 2)]))
    assert gens[1].x_support == {1} and gens[1].z_support == {0, 2} and gens[1].sign == 1


def test_involutions_on_random_state():
    rng = np.random.default_rng(0)
    psi = _random_state(rng, 4)
    assert np.allclose(apply_cz_state(apply_cz_state(psi, 0, 3), 3, 0).amplitudes, psi.amplitudes)
    assert np.allclose(apply_pauli_z(apply_pauli_z(psi, 2), 2).amplitudes, psi.amplitudes)
    assert np.allclose(apply_pauli_x(apply_pauli_x(psi, 1), 1).amplitudes, psi.amplitudes)


def test_lc_round_trip_path_to_triangle():
    p3 = new_graph(3, [(0, 1), (1, 2)])
    tri = local_complement(p3, 1)
    out = apply_lc_unitary(build_graph_state(p3), 1, neighborhood(p3, 1))
    assert equal_up_to_global_phase(out, build_graph_state(tri), 1e-10)
    assert not equal_up_to_global_phase(build_graph_state(p3), build_graph_state(tri), 1e-3)


def test_norm_preserved_by_unitaries():
    rng = np.random.default_rng(1)
    psi = _random_state(rng, 6)
    for op in (
        lambda s: apply_cz_state(s, 1, 4),
        lambda s: apply_lc_unitary(s, 2, [0, 5]),
        lambda s: apply_pauli_z(s, 0),
        lambda s: apply_pauli_x(s, 5),
        lambda s: apply_hadamard(s, 3),
    ):
        assert abs(op(psi).norm() - 1) < 1e-12


def test_project_single_edge():
    psi = build_graph_state(new_graph(2, [(0, 1)]))
    post0, p0 = project_z(psi, 0, 0)
    assert p0 == pytest.approx(0.5)
    assert np.allclose(post0.amplitudes, np.kron([1, 0], [s2, s2]))
    post1, p1 = project_z(psi, 0, 1)
    assert p1 == pytest.approx(0.5)
    assert np.allclose(post1.amplitudes, np.kron([0, 1], [s2, -s2]))
    fixed = apply_pauli_z(post1, 1)
    assert np.allclose(fixed.amplitudes, np.kron([0, 1], [s2, s2]))
    again, p = project_z(post0, 0, 0)
    assert p == pytest.approx(1.0) and np.allclose(again.amplitudes, post0.amplitudes)
    with pytest.raises(OracleError):
        project_z(post0, 0, 1)


def test_measure_star_center_outcome_one_needs_leaf_corrections():
    star = new_graph(4, [(0, 1), (0, 2), (0, 3)])
    psi, p = project_z(build_graph_state(star), 0, 1)
    assert p == pytest.approx(0.5)
    g, corr = measure_z(star, 0, 1)
    assert corr.pauli_z_targets == {1, 2, 3}
    fixed = psi
    for b in corr.pauli_z_targets:
        fixed = apply_pauli_z(fixed, b)
    expected = np.kron([0, 1], build_graph_state(new_graph(3)).amplitudes)
    assert equal_up_to_global_phase(fixed, StateVector(4, expected))
    assert not equal_up_to_global_phase(psi, StateVector(4, expected), 1e-3)


def test_z_measurement_is_unbiased_on_graph_states():
    rng = random.Random(4)
    for _ in range(50):
        g = random_graph(rng, rng.randint(1, 8))
        a = rng.randrange(g.n)
        for o in (0, 1):
            assert project_z(build_graph_state(g), a, o)[1] == pytest.approx(0.5, abs=1e-12)


def test_entropy_examples():
    bell = StateVector(2, (_ket([0, 0]) + _ket([1, 1])) * s2)
    assert entanglement_entropy(bell, [0]) == pytest.approx(1.0, abs=1e-12)
    assert entanglement_entropy(plus_state(3), [0, 2]) == pytest.approx(0.0, abs=1e-12)
    assert entanglement_entropy(bell, []) == 0.0


def test_entropy_equals_cut_rank():
    rng = random.Random(8)
    for _ in range(60):
        g = random_graph(rng, rng.randint(2, 10))
        psi = build_graph_state(g)
        side = [v for v in range(g.n) if rng.random() < 0.5]
        assert abs(entanglement_entropy(psi, side) - cut_rank(g, side)) <= 1e-8


def test_global_phase_comparison():
    rng = np.random.default_rng(2)
    psi = _random_state(rng, 3)
    assert equal_up_to_global_phase(psi, StateVector(3, -psi.amplitudes))
    assert equal_up_to_global_phase(psi, StateVector(3, 1j * psi.amplitudes))
    bell = StateVector(2, (_ket([0, 0]) + _ket([1, 1])) * s2)
    assert not equal_up_to_global_phase(bell, StateVector(2, _ket([0, 0])))
    with pytest.raises(OracleError):
        overlap(bell, psi)


@pytest.mark.parametrize("outcome", [0, 1])
def test_single_neighbor_on_path(outcome):
    p3 = new_graph(3, [(0, 1), (1, 2)])
    res = fission_one_neighbor(p3, 1, 0, outcome)
    psi = execute_transcript_state(build_graph_state(p3), res.transcript, p3)
    assert overlap(psi, build_graph_state(res.graph)) >= 1 - 1e-10


def test_subset_fission_all_outcomes():
    g = new_graph(6, [(0, 1), (1, 2), (2, 3), (2, 4), (2, 5), (3, 4)])
    spec = plan_fission(g, 2, {3, 5})
    finals = set()
    for bits in itertools.product([0, 1], repeat=2):
        res = execute_fission(g, spec, bits)
        finals.add(tuple(res.graph.edges()))
        assert verify_transcript(g, res.transcript, res.graph) >= 1 - 1e-10
    assert len(finals) == 1


def test_empty_transcript_is_identity():
    g = new_graph(3, [(0, 1)])
    assert verify_transcript(g, Transcript()) == pytest.approx(1.0)


def test_capacity(monkeypatch):
    monkeypatch.setenv("GFK_MAX_QUBITS", "4")
    with pytest.raises(CapacityError):
        build_graph_state(new_graph(5))
    monkeypatch.setenv("GFK_MAX_QUBITS", "nope")
    with pytest.raises(OracleError):
        build_graph_state(new_graph(1))


def test_debug_dump():
    dump = build_graph_state(new_graph(1)).to_json()
    assert dump == [[pytest.approx(s2), 0.0], [pytest.approx(s2), 0.0]]


def test_functoriality_randomized():
    """State-level primitives commute with the graph rewrites (>= 1000 cases)."""
    rng = random.Random(21)
    cases = 0
    while cases < 1200:
        n = rng.randint(2, 10)
        g = random_graph(rng, n)
        psi = build_graph_state(g)
        a = rng.randrange(n)
        kind = cases % 3
        if kind == 0:
            b = rng.choice([x for x in range(n) if x != a])
            out_g, out_psi = apply_cz(g, a, b), apply_cz_state(psi, a, b)
        elif kind == 1:
            out_g, out_psi = local_complement(g, a), apply_lc_unitary(psi, a, neighborhood(g, a))
        else:
            o = rng.randrange(2)
            out_g, corr = measure_z(g, a, o)
            out_psi, _ = project_z(psi, a, o)
            for b in corr.pauli_z_targets:
                out_psi = apply_pauli_z(out_psi, b)
            if o:
                out_psi = apply_pauli_x(out_psi, a)
            out_psi = apply_hadamard(out_psi, a)
        assert overlap(out_psi, build_graph_state(out_g)) >= 1 - 1e-10
        cases += 1


def test_fission_replay_checks_every_op_kind():
    g = new_graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    res = fission(g, 0, {1, 2, 3}, [1])  # swapped side: Bell on {4}
    ops = {s.op for s in res.transcript.steps}
    assert ops == {"attach_ancilla", "cz", "local_complement", "measure_z", "correction", "swap"}
    assert verify_transcript(g, res.transcript, res.graph) >= 1 - 1e-10
