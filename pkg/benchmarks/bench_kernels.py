"""Time the JIT kernel lane against the vectorized numpy lane.

Run:  python benchmarks/bench_kernels.py
"""
import time

import numpy as np

from tanglevec import random_state
from tanglevec._kernels import (BACKEND, fs_best_overlap, fs_best_overlap_numpy,
                                tangle_ascent_best, tangle_ascent_numpy, warmup)
from tanglevec.synthesis import _A_QUADS, _PAIR_GENS, _random_su2_stack


def bench(label, fn, args, n_runs):
    times = []
    for _ in range(n_runs):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    times = np.array(times) * 1e3
    print(f"{label:34s}: {times.mean():9.3f} ms  (min {times.min():8.3f} ms, "
          f"n={n_runs})")
    return times.mean()


def main():
    print(f"active backend: {BACKEND}")
    if BACKEND != "numba":
        print("numba lane inactive (TANGLEVEC_BACKEND or missing numba); "
              "timing the numpy lane against itself is meaningless")
    t0 = time.perf_counter()
    warmup()
    print(f"warmup/compile: {time.perf_counter() - t0:.2f} s\n")

    rng = np.random.default_rng(0)

    # Fubini-Study overlap maximization: one 32-restart optimization
    t1 = random_state(1).reshape(2, 2, 2)
    t2 = random_state(2).reshape(2, 2, 2)
    inits = _random_su2_stack(rng, 32)
    args = (t1, t2, inits, 5000, 1e-10)
    print("local-overlap maximization (32 restarts):")
    a = bench("  jit lane" if BACKEND == "numba" else "  selected lane",
              fs_best_overlap, args, 20)
    b = bench("  numpy lane", fs_best_overlap_numpy, args, 5)
    print(f"  speedup: {b / a:.1f}x\n")

    # tangle gradient-ascent oracle: one 16-restart ascent
    psi = random_state(3)
    asc_inits = np.zeros((16, 15))
    asc_inits[1:] = rng.uniform(-np.pi, np.pi, (15, 15))
    args = (psi, _PAIR_GENS, _A_QUADS, asc_inits, 400, 1e-10)
    print("tangle ascent oracle (16 restarts):")
    a = bench("  jit lane" if BACKEND == "numba" else "  selected lane",
              tangle_ascent_best, args, 20)
    b = bench("  numpy lane", tangle_ascent_numpy, args, 5)
    print(f"  speedup: {b / a:.1f}x\n")

    fast = fs_best_overlap(*(t1, t2, inits, 5000, 1e-10))[0]
    slow = fs_best_overlap_numpy(*(t1, t2, inits, 5000, 1e-10))[0]
    print(f"lane agreement (overlap): |diff| = {abs(fast - slow):.2e}")
    fast = tangle_ascent_best(psi, _PAIR_GENS, _A_QUADS, asc_inits, 400, 1e-10)
    slow = tangle_ascent_numpy(psi, _PAIR_GENS, _A_QUADS, asc_inits, 400, 1e-10)
    print(f"lane agreement (tangle):  |diff| = {abs(fast - slow):.2e}")


if __name__ == "__main__":
    main()
