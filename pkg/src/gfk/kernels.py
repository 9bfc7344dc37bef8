"""Backend selection for the bit-row kernels.

The compiled extension handles graphs up to 64 vertices; larger graphs and
environments without the extension fall back to the pure-Python module.
Set ``GFK_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from gfk import _pykernels

_WORD = 64

if os.environ.get("GFK_PURE_PYTHON", "") not in ("", "0"):
    _ext = None
else:
    try:
        from gfk import _ckernels as _ext
    except ImportError:  # pragma: no cover - depends on the build
        _ext = None

BACKEND = "cython" if _ext is not None else "python"


def gf2_rank(rows: Sequence[int], width: int) -> int:
    if _ext is not None and width <= _WORD:
        return _ext.gf2_rank(rows)
    return _pykernels.gf2_rank(rows)


def cut_rank(rows: Sequence[int], side: int) -> int:
    if _ext is not None and len(rows) <= _WORD:
        return _ext.cut_rank(rows, side)
    return _pykernels.cut_rank(rows, side)


def local_complement(rows: Sequence[int], a: int) -> list[int]:
    if _ext is not None and len(rows) <= _WORD:
        return _ext.local_complement(rows, a)
    return _pykernels.local_complement(rows, a)


def graph_state_parity(rows: Sequence[int], n: int) -> np.ndarray:
    if _ext is not None and n <= 40:
        return _ext.graph_state_parity(rows, n)
    return _pykernels.graph_state_parity(rows, n)


def apply_1q(amps: np.ndarray, n: int, q: int, u: np.ndarray) -> None:
    impl = _ext if _ext is not None else _pykernels
    impl.apply_1q(amps, n, q, complex(u[0, 0]), complex(u[0, 1]), complex(u[1, 0]), complex(u[1, 1]))


def apply_diag(amps: np.ndarray, n: int, q: int, d0: complex, d1: complex) -> None:
    (_ext if _ext is not None else _pykernels).apply_diag(amps, n, q, d0, d1)


def apply_cz(amps: np.ndarray, n: int, a: int, b: int) -> None:
    (_ext if _ext is not None else _pykernels).apply_cz(amps, n, a, b)
