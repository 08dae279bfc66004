"""Benchmark the Stiefel angle-chart kernels: compiled extension vs numpy fallback.

Times build_unitary_kernel and grad_build_unitary_kernel for a range of
(k, r) sizes and prints the speedup, after verifying that both backends
produce identical results on the same inputs.

Run from the repository root:  python3 benchmarks/bench_chart.py
"""

from __future__ import annotations

import time

import numpy as np

from convroof import _givens_py
from convroof.stiefel import _chart_layout, dim_st

try:
    from convroof import _givens_cy
except ImportError:
    _givens_cy = None

SIZES = [(6, 3), (10, 5), (14, 10), (20, 10), (24, 16)]
RNG = np.random.default_rng(0)


def make_inputs(k: int, r: int):
    s0, _, slot, n_pairs = _chart_layout(k, r)
    theta = RNG.uniform(0.0, 2.0 * np.pi, n_pairs)[slot].copy()
    phi = RNG.uniform(0.0, 2.0 * np.pi, n_pairs)[slot].copy()
    chi = RNG.uniform(0.0, 2.0 * np.pi, r)
    return theta, phi, chi, s0, slot


def timeit(fn, *args, min_time=0.2):
    fn(*args)  # warm up
    n, elapsed = 0, 0.0
    while elapsed < min_time:
        t0 = time.perf_counter()
        fn(*args)
        elapsed += time.perf_counter() - t0
        n += 1
    return elapsed / n


def main() -> None:
    if _givens_cy is None:
        print("compiled backend unavailable; timing the pure-python kernel only")
    header = f"{'k':>4} {'r':>4} {'dim':>5}   {'kernel':<18} {'python':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for k, r in SIZES:
        theta, phi, chi, s0, slot = make_inputs(k, r)
        d = dim_st(k, r)

        u_py = _givens_py.build_unitary_kernel(theta, phi, chi, s0, k, r)
        _, du_py = _givens_py.grad_build_unitary_kernel(theta, phi, chi, s0, slot, k, r)
        rows = {
            "build_unitary": (
                timeit(_givens_py.build_unitary_kernel, theta, phi, chi, s0, k, r),
                None,
            ),
            "grad_build_unitary": (
                timeit(_givens_py.grad_build_unitary_kernel, theta, phi, chi, s0, slot, k, r),
                None,
            ),
        }
        if _givens_cy is not None:
            u_cy = _givens_cy.build_unitary_kernel(theta, phi, chi, s0, k, r)
            _, du_cy = _givens_cy.grad_build_unitary_kernel(theta, phi, chi, s0, slot, k, r)
            assert np.max(np.abs(u_py - np.asarray(u_cy))) < 1e-13, "backend mismatch (U)"
            assert np.max(np.abs(du_py - np.asarray(du_cy))) < 1e-13, "backend mismatch (dU)"
            rows["build_unitary"] = (
                rows["build_unitary"][0],
                timeit(_givens_cy.build_unitary_kernel, theta, phi, chi, s0, k, r),
            )
            rows["grad_build_unitary"] = (
                rows["grad_build_unitary"][0],
                timeit(_givens_cy.grad_build_unitary_kernel, theta, phi, chi, s0, slot, k, r),
            )
        for name, (t_py, t_cy) in rows.items():
            if t_cy is None:
                print(f"{k:>4} {r:>4} {d:>5}   {name:<18} {t_py * 1e6:>9.1f}u {'-':>10} {'-':>8}")
            else:
                print(
                    f"{k:>4} {r:>4} {d:>5}   {name:<18} "
                    f"{t_py * 1e6:>9.1f}u {t_cy * 1e6:>9.1f}u {t_py / t_cy:>7.1f}x"
                )


if __name__ == "__main__":
    main()
