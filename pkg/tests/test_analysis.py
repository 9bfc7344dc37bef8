import random

import numpy as np
import pytest

from gfk.analysis import (
    Bipartition,
    audit_fission,
    check_one_uniform,
    cut_rank,
    fission_via_orbit,
    ghz_cost,
    minimize_resources,
    replay_lc,
)
from gfk.fission import fission, fission_one_neighbor, iterate_fission
from gfk.graph import GraphError, local_complement, neighborhood, new_graph
from gfk.oracle import build_graph_state, entanglement_entropy, verify_transcript
from helpers import brute_rank_gf2, random_connected, random_graph

# c = 0; kept triple 1,2,3 with 1 adjacent to 2 and 3; other side 4,5,6
WITNESS = new_graph(7, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (1, 2), (1, 3)])


def _block_rank(g, side):
    adj = g.adjacency().astype(int)
    other = [v for v in range(g.n) if v not in side]
    return brute_rank_gf2(adj[np.ix_(sorted(side), other)]) if side and other else 0


def test_cut_rank_examples():
    rng = random.Random(0)
    g = random_connected(rng, 7)
    for v in range(g.n):
        assert cut_rank(g, [v]) == 1
    assert cut_rank(g, []) == 0
    assert cut_rank(g, Bipartition(frozenset())) == 0
    path = new_graph(4, [(0, 1), (1, 2), (2, 3)])
    assert cut_rank(path, {0, 1}) == _block_rank(path, {0, 1}) == 1


@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_cut_rank_ghz_star(m):
    star = new_graph(m, [(0, i) for i in range(1, m)])
    psi = build_graph_state(star)
    for mask in range(1, 1 << m):
        side = [v for v in range(m) if mask >> v & 1]
        if len(side) == m:
            continue
        assert cut_rank(star, side) == 1
        assert entanglement_entropy(psi, side) == pytest.approx(1.0, abs=1e-10)


def test_cut_rank_rejects_bad_vertices():
    with pytest.raises(GraphError):
        cut_rank(new_graph(3), [5])


def test_cut_rank_matches_brute_force_and_is_symmetric():
    rng = random.Random(1)
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 9))
        side = {v for v in range(g.n) if rng.random() < 0.5}
        r = cut_rank(g, side)
        assert r == _block_rank(g, side)
        assert r == cut_rank(g, set(range(g.n)) - side)


def test_cut_rank_invariant_under_local_complementation():
    rng = random.Random(2)
    for n in range(2, 9):
        g = random_graph(rng, n)
        for a in range(n):
            h = local_complement(g, a)
            for _ in range(100):
                side = [v for v in range(n) if rng.random() < 0.5]
                assert cut_rank(g, side) == cut_rank(h, side)


def test_one_uniform():
    rng = random.Random(3)
    for n in range(2, 11):
        assert check_one_uniform(random_connected(rng, n))
    assert not check_one_uniform(new_graph(3, [(0, 1)]))
    two_edges = new_graph(4, [(0, 1), (2, 3)])
    assert all(cut_rank(two_edges, [v]) == 1 for v in range(4))
    assert not check_one_uniform(two_edges)


def test_audit_single_neighbor():
    g = new_graph(6, [(0, 1), (1, 2), (2, 3), (2, 4), (3, 5), (4, 5)])
    res = fission_one_neighbor(g, 2, 1)
    audit = audit_fission(g, res, 2)
    assert audit.as_tuple() == (1, 2, 1, True)
    assert audit.to_json() == {"pre": 1, "post": 2, "ancilla": 1, "satisfied": True}


def test_audit_degenerate_has_slack():
    g = new_graph(3, [(0, 1), (0, 2)])
    res = fission(g, 0, set())
    audit = audit_fission(g, res, 0)
    assert audit.post_ebits_node == 1 and audit.satisfied
    assert audit.post_ebits_node - audit.pre_ebits_target < audit.ancilla_ebits_supplied


@pytest.mark.parametrize("k", [2, 3])
def test_audit_k_fold(k):
    star = new_graph(k + 2, [(0, i) for i in range(1, k + 2)])
    res = iterate_fission(star, 0, [{i} for i in range(1, k + 2)])
    audit = audit_fission(star, res, 0)
    assert audit.post_ebits_node == 1 + k
    assert audit.ancilla_ebits_supplied == k and audit.satisfied


def test_audit_unsatisfied_when_ebits_missing():
    from gfk.analysis import FissionAudit

    assert not FissionAudit(1, 3, 1).satisfied


def test_minimize_witness():
    res = minimize_resources(WITNESS, 0, {1, 2, 3})
    assert res.ancilla_cost_before == 4 and res.ancilla_cost_after == 2
    assert res.exhausted and res.lc_sequence == (1,)
    assert replay_lc(WITNESS, res.lc_sequence) == res.representative
    assert res.kept_image == {1}


def test_minimize_already_minimal():
    res = minimize_resources(WITNESS, 0, {4})
    assert res.lc_sequence == () and res.ancilla_cost_before == res.ancilla_cost_after == 2


@pytest.mark.parametrize("leaves", [3, 4, 5])
def test_minimize_star_cannot_improve(leaves):
    star = new_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
    kept = set(range(1, leaves // 2 + 1))
    res = minimize_resources(star, 0, kept)
    assert res.exhausted
    assert res.ancilla_cost_after == res.ancilla_cost_before == ghz_cost(len(kept), leaves - len(kept))


def test_minimize_budget_truncation_uses_greedy():
    rng = random.Random(5)
    g = random_connected(rng, 9, 0.6)
    nb = sorted(neighborhood(g, 0))
    res = minimize_resources(g, 0, nb[: len(nb) // 2], budget=1)
    assert not res.exhausted and res.nodes_explored == 1
    assert res.ancilla_cost_after <= res.ancilla_cost_before
    assert replay_lc(g, res.lc_sequence) == res.representative


def test_minimize_errors():
    with pytest.raises(ValueError):
        minimize_resources(WITNESS, 0, {1}, budget=0)
    with pytest.raises(ValueError):
        minimize_resources(WITNESS, 1, {4})


def test_minimize_include_target_flag_widens_orbit():
    narrow = minimize_resources(WITNESS, 0, {1, 2, 3})
    wide = minimize_resources(WITNESS, 0, {1, 2, 3}, include_target=True)
    assert wide.nodes_explored >= narrow.nodes_explored
    assert wide.ancilla_cost_after <= narrow.ancilla_cost_after


def test_minimize_invariants_random():
    rng = random.Random(6)
    for _ in range(40):
        g = random_connected(rng, rng.randint(3, 7))
        t = rng.randrange(g.n)
        nb = sorted(neighborhood(g, t))
        kept = {v for v in nb if rng.random() < 0.5}
        res = minimize_resources(g, t, kept)
        assert res.ancilla_cost_after <= res.ancilla_cost_before
        rep = replay_lc(g, res.lc_sequence)
        assert rep == res.representative
        assert res.kept_image <= neighborhood(rep, t)


def test_fission_via_orbit_matches_direct_fission():
    rng = random.Random(7)
    graphs = [(WITNESS, 0, {1, 2, 3})]
    for _ in range(40):
        g = random_connected(rng, rng.randint(3, 7))
        t = rng.randrange(g.n)
        nb = sorted(neighborhood(g, t))
        graphs.append((g, t, {v for v in nb if rng.random() < 0.5}))
    for g, t, kept in graphs:
        direct = fission(g, t, kept)
        routed, orbit = fission_via_orbit(g, t, kept)
        assert routed.new_vertex == direct.new_vertex == g.n
        live = set(range(g.n + 1))
        assert {e for e in routed.graph.edges() if set(e) <= live} == {
            e for e in direct.graph.edges() if set(e) <= live
        }
        assert routed.ancilla_qubits_used == orbit.ancilla_cost_after or routed.degenerate
        assert verify_transcript(g, routed.transcript, routed.graph) >= 1 - 1e-10
