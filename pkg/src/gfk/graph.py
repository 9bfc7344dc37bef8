"""Graph-state calculus on packed bit rows.

A graph state is stored as a tuple of Python ints, one per vertex, where bit
``j`` of ``rows[i]`` marks the edge ``(i, j)``. Every operation returns a new
``GraphState``; nothing mutates in place.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from gfk import kernels

MEASURED_SUFFIX = "#z"


class GraphError(ValueError):
    """Invalid vertex, edge or ancilla request."""


@dataclass(frozen=True)
class GraphState:
    """Simple undirected graph encoding a stabilizer graph state.

    ``labels`` is ``None`` until an operation needs names (ancilla attachment,
    measurement marking); ``label(i)`` falls back to ``str(i)``.
    """

    n: int
    rows: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None)

    @property
    def vertex_count(self) -> int:
        return self.n

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels is not None else str(a)

    def all_labels(self) -> tuple[str, ...]:
        return self.labels if self.labels is not None else tuple(str(i) for i in range(self.n))

    def check_vertex(self, a: int) -> None:
        if not isinstance(a, (int, np.integer)) or isinstance(a, bool) or not 0 <= a < self.n:
            raise GraphError(f"vertex {a!r} out of range for graph with {self.n} vertices")

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.rows[a] >> b & 1)

    def degree(self, a: int) -> int:
        return self.rows[a].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(a, b)`` with ``a < b`` in lexicographic order."""
        out = []
        for a, row in enumerate(self.rows):
            row >>= a + 1
            b = a + 1
            while row:
                if row & 1:
                    out.append((a, b))
                row >>= 1
                b += 1
        return out

    def adjacency(self) -> np.ndarray:
        adj = np.zeros((self.n, self.n), dtype=bool)
        for a, b in self.edges():
            adj[a, b] = adj[b, a] = True
        return adj

    def is_measured(self, a: int) -> bool:
        return self.labels is not None and self.labels[a].endswith(MEASURED_SUFFIX)

    def __repr__(self) -> str:
        return f"GraphState(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class CorrectionSet:
    """Pauli-Z byproducts owed after a Z measurement with outcome 1."""

    pauli_z_targets: frozenset[int] = frozenset()

    def __bool__(self) -> bool:
        return bool(self.pauli_z_targets)

    def sorted(self) -> list[int]:
        return sorted(self.pauli_z_targets)


@dataclass(frozen=True)
class Ancilla:
    """Auxiliary resource state: a fresh ``|+>`` (size 1), Bell (2) or GHZ (m)."""

    size: int

    @property
    def kind(self) -> str:
        return {1: "plus", 2: "bell"}.get(self.size, "ghz")

    @property
    def ebits(self) -> int:
        return 0 if self.size == 1 else 1

    @classmethod
    def from_kind(cls, kind: str, size: int) -> "Ancilla":
        expected = {"plus": 1, "bell": 2}.get(kind)
        if kind == "ghz":
            if size < 2:
                raise GraphError(f"GHZ ancilla needs at least 2 qubits, got {size}")
        elif expected is None:
            raise GraphError(f"unknown ancilla kind {kind!r}")
        elif size != expected:
            raise GraphError(f"{kind} ancilla needs exactly {expected} host(s), got {size}")
        return cls(size)


BELL = Ancilla(2)
PLUS = Ancilla(1)


def GHZ(m: int) -> Ancilla:
    if m < 2:
        raise GraphError(f"GHZ ancilla needs m >= 2, got {m}")
    return Ancilla(m)


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def new_graph(
    n: int, edges: Iterable[Sequence[int]] = (), labels: Sequence[str] | None = None
) -> GraphState:
    """Build a graph from an edge list; repeated pairs toggle by parity."""
    if not isinstance(n, int) or n < 0:
        raise GraphError(f"vertex count must be a non-negative integer, got {n!r}")
    rows = [0] * n
    for pair in edges:
        a, b = (int(x) for x in pair)
        if not (0 <= a < n and 0 <= b < n):
            raise GraphError(f"edge ({a}, {b}) out of range for {n} vertices")
        if a == b:
            raise GraphError(f"self-loop on vertex {a}")
        rows[a] ^= 1 << b
        rows[b] ^= 1 << a
    if labels is not None:
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise GraphError(f"expected {n} labels, got {len(labels)}")
        if len(set(labels)) != n:
            raise GraphError("labels must be unique")
    return GraphState(n, tuple(rows), labels)


def from_adjacency(adj: np.ndarray) -> GraphState:
    adj = np.asarray(adj, dtype=bool)
    if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
        raise GraphError("adjacency must be square")
    if not np.array_equal(adj, adj.T):
        raise GraphError("adjacency must be symmetric")
    if adj.diagonal().any():
        raise GraphError("adjacency must have a zero diagonal")
    n = adj.shape[0]
    rows = tuple(_mask(np.flatnonzero(adj[i]).tolist()) for i in range(n))
    return GraphState(n, rows)


def neighborhood(g: GraphState, a: int) -> frozenset[int]:
    g.check_vertex(a)
    return frozenset(_bits(g.rows[a]))


def apply_cz(g: GraphState, a: int, b: int) -> GraphState:
    """Toggle the edge ``(a, b)``."""
    g.check_vertex(a)
    g.check_vertex(b)
    if a == b:
        raise GraphError(f"CZ needs two distinct vertices, got ({a}, {a})")
    rows = list(g.rows)
    rows[a] ^= 1 << b
    rows[b] ^= 1 << a
    return GraphState(g.n, tuple(rows), g.labels)


def local_complement(g: GraphState, a: int) -> GraphState:
    """Complement the subgraph induced on the neighborhood of ``a``."""
    g.check_vertex(a)
    return GraphState(g.n, tuple(kernels.local_complement(g.rows, a)), g.labels)


def _marked(labels: tuple[str, ...], a: int) -> tuple[str, ...]:
    if labels[a].endswith(MEASURED_SUFFIX):
        return labels
    out = list(labels)
    out[a] = labels[a] + MEASURED_SUFFIX
    return tuple(out)


def measure_z(g: GraphState, a: int, outcome: int) -> tuple[GraphState, CorrectionSet]:
    """Z-measure vertex ``a``: drop its edges and keep it as an isolated vertex.

    Outcome 1 leaves a Z byproduct on every former neighbor of ``a``.
    """
    g.check_vertex(a)
    if outcome not in (0, 1):
        raise GraphError(f"measurement outcome must be 0 or 1, got {outcome!r}")
    if g.is_measured(a) and g.rows[a] == 0:
        return g, CorrectionSet()
    nb = g.rows[a]
    rows = list(g.rows)
    for b in _bits(nb):
        rows[b] &= ~(1 << a)
    rows[a] = 0
    corrections = CorrectionSet(frozenset(_bits(nb)) if outcome else frozenset())
    return GraphState(g.n, tuple(rows), _marked(g.all_labels(), a)), corrections


def _fresh_label(base: str, taken: set[str]) -> str:
    name = base + "'"
    while name in taken:
        name += "'"
    return name


def attach_ancilla(
    g: GraphState, kind: Ancilla, hosts: Sequence[int]
) -> tuple[GraphState, list[int]]:
    """Append an ancilla resource as new vertices co-located with ``hosts``.

    A GHZ state is encoded as a star centred on the vertex co-located with
    ``hosts[0]``; a Bell pair is the two-vertex star. The new vertices are
    ``n, n+1, ...`` in host order, with no edges to the existing graph.
    """
    hosts = [int(h) for h in hosts]
    for h in hosts:
        g.check_vertex(h)
    if len(set(hosts)) != len(hosts):
        raise GraphError(f"duplicate ancilla hosts {hosts}")
    if len(hosts) != kind.size:
        raise GraphError(f"{kind.kind} ancilla of size {kind.size} needs {kind.size} hosts, got {len(hosts)}")
    labels = list(g.all_labels())
    taken = set(labels)
    new = list(range(g.n, g.n + kind.size))
    for h in hosts:
        name = _fresh_label(labels[h], taken)
        taken.add(name)
        labels.append(name)
    rows = list(g.rows) + [0] * kind.size
    center = new[0]
    for leaf in new[1:]:
        rows[center] |= 1 << leaf
        rows[leaf] |= 1 << center
    return GraphState(g.n + kind.size, tuple(rows), tuple(labels)), new


def swap_vertices(g: GraphState, a: int, b: int) -> GraphState:
    """Exchange the adjacency of two vertices; labels stay in place."""
    g.check_vertex(a)
    g.check_vertex(b)
    if a == b:
        return g
    ma, mb = 1 << a, 1 << b
    rows = list(g.rows)
    rows[a], rows[b] = rows[b], rows[a]
    for i in range(g.n):
        r = rows[i]
        bit_a, bit_b = r >> a & 1, r >> b & 1
        if bit_a != bit_b:
            rows[i] = r ^ ma ^ mb
    return GraphState(g.n, tuple(rows), g.labels)


def compact(g: GraphState) -> tuple[GraphState, list[int]]:
    """Drop measured vertices. Returns the new graph and the kept old indices."""
    keep = [i for i in range(g.n) if not g.is_measured(i)]
    index = {old: new for new, old in enumerate(keep)}
    edges = [(index[a], index[b]) for a, b in g.edges() if a in index and b in index]
    labels = [g.labels[i] for i in keep] if g.labels is not None else None
    return new_graph(len(keep), edges, labels), keep


def components(g: GraphState) -> list[frozenset[int]]:
    seen = 0
    out = []
    for start in range(g.n):
        if seen >> start & 1:
            continue
        comp = frontier = 1 << start
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.rows[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(frozenset(_bits(comp)))
    return out


def is_connected(g: GraphState) -> bool:
    return g.n > 0 and len(components(g)) == 1


def canonical_key(g: GraphState) -> tuple[int, tuple[int, ...]]:
    """Deterministic hashable key of the vertex count and edge set (labels ignored)."""
    return (g.n, g.rows)
