"""Compare the compiled kernels against the pure-python fallback.

Times the three two-qubit hot paths on a batch of random states and random
measurement angles, checks that both backends agree to 1e-12, and prints a
speedup table. Run as ``python benchmarks/bench_kernels.py``.
"""

import time

import numpy as np

from qcorrkit import RandomSource, random_density
from qcorrkit.kernels import BACKEND, impl, python_impl

N_STATES = 20
N_ANGLES = 200
REPEAT = 3


def bench(fn, states, angle_sets, n_angles_per_call):
    worst = 0.0
    best_time = float("inf")
    for _ in range(REPEAT):
        start = time.perf_counter()
        acc = 0.0
        for rho in states:
            for angles in angle_sets:
                acc += fn(rho, *angles[:n_angles_per_call])
        best_time = max(worst, 0.0) * 0 + min(best_time, time.perf_counter() - start)
    return best_time, acc


def main():
    source = RandomSource(42)
    states = [random_density((2, 2), 4, source.split()).data for _ in range(N_STATES)]
    rng = source.split().generator
    angle_sets = rng.uniform(0.0, 2.0 * np.pi, (N_ANGLES, 4))

    cases = [
        ("cond_entropy_measured_b", 2),
        ("dephased_entropy_b", 2),
        ("dephased_entropy_product", 4),
    ]

    print(f"active backend: {BACKEND}")
    header = f"{'kernel':30s} {'compiled [s]':>12s} {'python [s]':>12s} {'speedup':>8s} {'max |diff|':>11s}"
    print(header)
    print("-" * len(header))
    for name, n_angles in cases:
        fast = getattr(impl, name)
        slow = getattr(python_impl, name)
        t_fast, _ = bench(fast, states, angle_sets, n_angles)
        t_slow, _ = bench(slow, states, angle_sets, n_angles)
        diff = max(
            abs(fast(rho, *a[:n_angles]) - slow(rho, *a[:n_angles]))
            for rho in states
            for a in angle_sets[:20]
        )
        print(f"{name:30s} {t_fast:12.4f} {t_slow:12.4f} {t_slow / t_fast:8.1f}x {diff:11.2e}")


if __name__ == "__main__":
    main()
