"""Timing comparison of the compiled kernels against their fallbacks.

Run directly:  python3 benchmarks/bench_backends.py

Covers the cyclic Jacobi eigensolver (compiled, pure-numpy fallback, and
LAPACK ``eigvalsh`` as the reference) and the bilinear sum kernels
(compiled vs the same source interpreted).  Set MOEBIUS_CSR_NUMBA=0 to
see what the package does when the compiled backend is unavailable; this
script then benchmarks the fallback only.
"""

import time

import numpy as np

from moebius_csr import _kernels
from moebius_csr._accel import NUMBA_ENABLED


def best_of(fn, repeats=3):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def random_symmetric(rng, size):
    x = rng.normal(size=(size, size))
    return (x + x.T) / 2.0


def bench_eigensolvers(rng):
    print("eigensolver, real symmetric input (best of 3, ms)")
    header = f"{'size':>6} {'compiled':>12} {'numpy fallback':>16} {'eigvalsh':>12}"
    print(header)
    for size in (48, 96, 192):
        a = random_symmetric(rng, size)
        row = [f"{size:>6}"]
        if NUMBA_ENABLED:
            _kernels.jacobi_eigvals_compiled(a.copy(), 1e-12, 100)  # JIT warmup
            t = best_of(lambda: _kernels.jacobi_eigvals_compiled(a.copy(), 1e-12, 100))
            row.append(f"{t * 1e3:>12.2f}")
        else:
            row.append(f"{'(disabled)':>12}")
        t = best_of(lambda: _kernels.jacobi_eigvals_numpy(a.copy(), 1e-12, 100))
        row.append(f"{t * 1e3:>16.2f}")
        t = best_of(lambda: np.linalg.eigvalsh(a))
        row.append(f"{t * 1e3:>12.2f}")
        print(" ".join(row))

        got = np.sort(_kernels.jacobi_eigvals_numpy(a.copy(), 1e-12, 100))
        assert np.allclose(got, np.linalg.eigvalsh(a), atol=1e-9)


def bench_sum_kernels(rng):
    if not NUMBA_ENABLED:
        print("\nsum kernels: compiled backend disabled, nothing to compare")
        return
    a = rng.uniform(0.0, 1.0, size=(400, 200))
    print("\nbilinear sum kernels on a 400 x 200 matrix (best of 3, ms)")
    print(f"{'kernel':<24} {'compiled':>12} {'interpreted':>12}")
    for fn in (
        _kernels.sum_all,
        _kernels.sum_ring_products,
        _kernels.sum_rung_products,
        _kernels.sum_antipodal_products,
    ):
        fn(a)  # JIT warmup
        t_jit = best_of(lambda: fn(a))
        t_py = best_of(lambda: fn.py_func(a))
        assert fn(a) == fn.py_func(a)  # backends must agree bit for bit
        print(f"{fn.py_func.__name__:<24} {t_jit * 1e3:>12.3f} {t_py * 1e3:>12.3f}")


def main():
    print(f"compiled backend enabled: {NUMBA_ENABLED} (MOEBIUS_CSR_NUMBA)")
    rng = np.random.default_rng(0)
    bench_eigensolvers(rng)
    bench_sum_kernels(rng)


if __name__ == "__main__":
    main()