"""Pure-Python reference kernels.

Bit-row convention: ``rows[i]`` is an int whose bit ``j`` is set iff
vertices ``i`` and ``j`` are adjacent.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) of the matrix whose rows are the given bitmasks."""
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = row
                break
            row ^= p
    return len(pivots)


def cut_rank(rows: Sequence[int], side: int) -> int:
    """GF(2) rank of the adjacency block between ``side`` and its complement."""
    outside = ~side
    block = []
    for i, row in enumerate(rows):
        if side >> i & 1:
            r = row & outside
            if r:
                block.append(r)
    return gf2_rank(block)


def local_complement(rows: Sequence[int], a: int) -> list[int]:
    nb = rows[a]
    out = list(rows)
    rest = nb
    while rest:
        low = rest & -rest
        b = low.bit_length() - 1
        out[b] ^= nb & ~low
        rest ^= low
    return out


def graph_state_parity(rows: Sequence[int], n: int) -> np.ndarray:
    """Edge-count parity of every computational basis state.

    Entry ``x`` is ``sum_{(a,b) in E} x_a x_b mod 2`` where vertex ``i``
    occupies bit ``n - 1 - i`` of ``x`` (vertex 0 is most significant).
    """
    idx = np.arange(1 << n, dtype=np.int64)
    bits = [(idx >> (n - 1 - i)) & 1 for i in range(n)]
    parity = np.zeros(1 << n, dtype=np.int8)
    for a in range(n):
        row = rows[a] >> (a + 1)
        b = a + 1
        while row:
            if row & 1:
                parity ^= (bits[a] & bits[b]).astype(np.int8)
            row >>= 1
            b += 1
    return parity


def apply_1q(amps: np.ndarray, n: int, q: int, u00: complex, u01: complex, u10: complex, u11: complex) -> None:
    """In-place 2x2 gate on qubit ``q`` (qubit 0 is the most significant bit)."""
    view = amps.reshape(1 << q, 2, 1 << (n - q - 1))
    lo = view[:, 0, :].copy()
    hi = view[:, 1, :]
    view[:, 0, :] = u00 * lo + u01 * hi
    view[:, 1, :] = u10 * lo + u11 * hi


def apply_diag(amps: np.ndarray, n: int, q: int, d0: complex, d1: complex) -> None:
    view = amps.reshape(1 << q, 2, 1 << (n - q - 1))
    view[:, 0, :] *= d0
    view[:, 1, :] *= d1


def apply_cz(amps: np.ndarray, n: int, a: int, b: int) -> None:
    a, b = min(a, b), max(a, b)
    view = amps.reshape(1 << a, 2, 1 << (b - a - 1), 2, 1 << (n - b - 1))
    view[:, 1, :, 1, :] *= -1
