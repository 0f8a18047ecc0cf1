"""Compare the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each row times one kernel on identical inputs under both backends and
checks that the results agree.
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from tsubdiv import _pykernels, kernels, random_tournament


def _cases():
    T = random_tournament(800, 1)
    out_w, in_w = T.words
    us = np.arange(0, 800, dtype=np.int64)
    vs = np.arange(0, 800, 4, dtype=np.int64)
    mask = np.full(out_w.shape[1], np.uint64(2**64 - 1))
    yield "directed_counts n=800", lambda m: m.directed_counts(out_w, in_w, us, vs, mask)

    S = random_tournament(10, 164)
    o = np.ascontiguousarray(S.words[0][:, 0])
    i = np.ascontiguousarray(S.words[1][:, 0])
    yield "exact search n=10 k=4", lambda m: m.find_subdivision_small(o, i, 10, 4, -1, 0.0)

    yield "sweep n=6 k=3 (2^15)", lambda m: m.sweep_small(6, 3, 0, 1 << 15, False, -1, 0.0)


def _same(a, b) -> bool:
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return [list(x) if hasattr(x, "__len__") else x for x in a] == \
           [list(x) if hasattr(x, "__len__") else x for x in b]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if kernels.BACKEND != "cython":
        raise SystemExit("compiled extension not available; build with `pip install -e .`")
    fast = kernels.backend
    print(f"{'kernel':<26} {'compiled':>11} {'python':>11} {'speedup':>8}  agree")
    for name, run in _cases():
        t_fast = min(timeit.repeat(lambda: run(fast), number=1, repeat=args.repeat))
        t_slow = min(timeit.repeat(lambda: run(_pykernels), number=1, repeat=args.repeat))
        agree = _same(run(fast), run(_pykernels))
        print(f"{name:<26} {t_fast * 1e3:>9.2f}ms {t_slow * 1e3:>9.2f}ms "
              f"{t_slow / t_fast:>7.0f}x  {agree}")


if __name__ == "__main__":
    main()
