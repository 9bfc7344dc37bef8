"""Graph generators and brute-force oracles shared by the test modules."""

from __future__ import annotations

import itertools
import random

import networkx as nx
import numpy as np

from gfk.graph import GraphState, is_connected, new_graph


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> GraphState:
    edges = [(a, b) for a, b in itertools.combinations(range(n), 2) if rng.random() < p]
    return new_graph(n, edges)


def random_connected(rng: random.Random, n: int, p: float | None = None) -> GraphState:
    while True:
        g = random_graph(rng, n, rng.uniform(0.25, 0.8) if p is None else p)
        if is_connected(g):
            return g


def all_labeled_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield new_graph(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1])


def atlas_graphs(max_n: int = 7, connected: bool = False):
    """All graphs up to isomorphism with 1..max_n vertices (max_n <= 7)."""
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n == 0 or n > max_n:
            continue
        if connected and not nx.is_connected(h):
            continue
        yield new_graph(n, list(h.edges()))


def brute_rank_gf2(matrix: np.ndarray) -> int:
    """Rank as log2 of the size of the row span, by enumerating all row subsets."""
    rows = [tuple(int(x) for x in r) for r in np.asarray(matrix, dtype=int) % 2]
    if not rows:
        return 0
    span = set()
    for mask in range(1 << len(rows)):
        acc = [0] * len(rows[0])
        for i, r in enumerate(rows):
            if mask >> i & 1:
                acc = [x ^ y for x, y in zip(acc, r)]
        span.add(tuple(acc))
    return len(span).bit_length() - 1


def brute_local_complement(adj: np.ndarray, a: int) -> np.ndarray:
    adj = adj.copy()
    nb = [b for b in range(len(adj)) if adj[a, b]]
    for b, c in itertools.combinations(nb, 2):
        adj[b, c] ^= True
        adj[c, b] ^= True
    return adj


def neighbor_sets(g: GraphState) -> list[frozenset[int]]:
    return [frozenset(b for b in range(g.n) if g.has_edge(a, b)) for a in range(g.n)]


def covering_graphs_8():
    """One labeled graph per 8-vertex isomorphism class, plus some repeats.

    Deleting a minimum-degree vertex from any 8-vertex graph leaves a 7-vertex
    graph, so extending every atlas graph by a vertex that ends with minimum
    degree reaches every class.
    """
    for g in atlas_graphs(7):
        if g.n != 7:
            continue
        degs = [g.degree(v) for v in range(7)]
        for mask in range(1 << 7):
            d = bin(mask).count("1")
            if all(degs[v] + (mask >> v & 1) >= d for v in range(7)):
                yield new_graph(8, g.edges() + [(v, 7) for v in range(7) if mask >> v & 1])


ACCEPTANCE_LOG: list[str] = []
