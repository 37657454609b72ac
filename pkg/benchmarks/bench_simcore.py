"""Time the compiled jump-chain kernel against the pure-Python one.

    python benchmarks/bench_simcore.py [--trajectories 2000] [--N 3] [--horizon 1.0]

Both backends run the same streams, so the final states must agree exactly;
the script checks that before reporting timings.
"""

import argparse
import time

import numpy as np

from gtring.markov import MAX_JUMPS
from gtring.simcore import compiled_backend, python_backend


def timed(backend, args, params, start):
    t0 = time.perf_counter()
    finals, jumps, truncated = backend.run_final(params, start, args.horizon, args.seed, 0, args.trajectories, MAX_JUMPS)
    return time.perf_counter() - t0, np.asarray(finals), int(np.sum(jumps))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trajectories", type=int, default=2000)
    parser.add_argument("--N", type=int, default=3)
    parser.add_argument("--horizon", type=float, default=1.0)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    params = (0.5, 0.7, 0.5, 0.7)
    start = (0,) * args.N
    py_time, py_finals, jumps = timed(python_backend, args, params, start)
    print(f"python  : {py_time:8.3f} s  ({jumps} jumps)")
    if compiled_backend is None:
        print("compiled: extension not built")
        return
    c_time, c_finals, _ = timed(compiled_backend, args, params, start)
    if not np.array_equal(py_finals, c_finals):
        raise SystemExit("backends disagree on final states")
    print(f"compiled: {c_time:8.3f} s  (speedup x{py_time / c_time:.1f}, identical final states)")


if __name__ == "__main__":
    main()
