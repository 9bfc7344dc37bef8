"""Compare the compiled kernels with the pure-Python fallback.

Run with ``python3 benchmarks/bench_kernels.py``. Each kernel is checked for
agreement between the two backends before it is timed.
"""

from __future__ import annotations

import argparse
import random
import timeit

import numpy as np

from gfk import _pykernels

try:
    from gfk import _ckernels
except ImportError:
    _ckernels = None


def random_rows(rng: random.Random, n: int, p: float = 0.4) -> list[int]:
    rows = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < p:
                rows[a] |= 1 << b
                rows[b] |= 1 << a
    return rows


def cases(seed: int):
    rng = random.Random(seed)
    rows14, rows16, rows48 = random_rows(rng, 14), random_rows(rng, 16), random_rows(rng, 48)
    side48 = rng.getrandbits(48)
    amps = np.exp(1j * np.arange(1 << 14)).astype(np.complex128)
    h = 2 ** -0.5
    yield "cut_rank n=16", lambda k: k.cut_rank(rows16, 0x00FF)
    yield "cut_rank n=48", lambda k: k.cut_rank(rows48, side48)
    yield "local_complement n=48", lambda k: list(k.local_complement(rows48, 5))
    yield "graph_state_parity n=14", lambda k: k.graph_state_parity(rows14, 14)
    yield "apply_1q n=14", lambda k: (k.apply_1q(a := amps.copy(), 14, 6, h, h, h, -h), a)[1]
    yield "apply_diag n=14", lambda k: (k.apply_diag(a := amps.copy(), 14, 6, 1j, -1j), a)[1]
    yield "apply_cz n=14", lambda k: (k.apply_cz(a := amps.copy(), 14, 3, 9), a)[1]


def _same(x, y) -> bool:
    if isinstance(x, np.ndarray):
        return np.allclose(x, y)
    return x == y


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    if _ckernels is None:
        print("compiled extension not built; only the Python backend is available")
    print(f"{'kernel':<26}{'python (us)':>14}{'cython (us)':>14}{'speedup':>10}")
    for name, fn in cases(args.seed):
        timings = {}
        for label, mod in (("python", _pykernels), ("cython", _ckernels)):
            if mod is None:
                continue
            t = timeit.Timer(lambda: fn(mod))
            number, _ = t.autorange()
            timings[label] = min(t.repeat(args.repeat, number)) / number * 1e6
        if _ckernels is not None:
            assert _same(fn(_pykernels), fn(_ckernels)), f"backends disagree on {name}"
            speed = f"{timings['python'] / timings['cython']:.1f}x"
            print(f"{name:<26}{timings['python']:>14.1f}{timings['cython']:>14.1f}{speed:>10}")
        else:
            print(f"{name:<26}{timings['python']:>14.1f}{'-':>14}{'-':>10}")


if __name__ == "__main__":
    main()
