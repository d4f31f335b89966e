"""Numeric kernels: ordered bilinear sums and a cyclic Jacobi eigensolver.

Two rules shape this module.  First, every sum runs in one fixed order
(first index outer, second index inner) and accumulates in float64, so a
result is reproducible bit for bit across runs and platforms and can be
checked against a naive reference loop.  ``np.sum`` would not give that
guarantee (it reassociates pairwise), hence the explicit loops.  Second,
the hot kernels carry ``@njit``; when numba is disabled the same loops run
interpreted, and the eigensolver additionally has a vectorized NumPy
fallback because interpreted O(d^3) loops would be unusable.

``jacobi_eigvals`` is the flavor selected by :mod:`moebius_csr._accel`.
"""

from __future__ import annotations

import math

import numpy as np

from ._accel import NUMBA_ENABLED, njit


@njit(cache=True)
def sum_all(x):
    """Sum every entry of a 2-d float64 array, rows outer, columns inner."""
    acc = 0.0
    for i in range(x.shape[0]):
        for j in range(x.shape[1]):
            acc += x[i, j]
    return acc


@njit(cache=True)
def sum_ring_products(a):
    """Sum a[i, j] * a[i+1, j] around each column's ring.

    The first index is cyclic: the last row pairs with the first.  Each
    directed pair is counted once (no reverse term).
    """
    rows = a.shape[0]
    acc = 0.0
    for i in range(rows):
        inext = i + 1
        if inext == rows:
            inext = 0
        for j in range(a.shape[1]):
            acc += a[i, j] * a[inext, j]
    return acc


@njit(cache=True)
def sum_rung_products(a):
    """Sum a[i, j] * a[i, j+1] over adjacent-column pairs, rows outer."""
    acc = 0.0
    for i in range(a.shape[0]):
        for j in range(a.shape[1] - 1):
            acc += a[i, j] * a[i, j + 1]
    return acc


@njit(cache=True)
def sum_antipodal_products(a):
    """Sum a[i, last] * a[i+half, last] over all rows of the last column.

    ``half`` is half the (even) row count, so every unordered pair is
    visited twice; callers that want each pair once apply a 1/2 factor.
    """
    rows = a.shape[0]
    half = rows // 2
    last = a.shape[1] - 1
    acc = 0.0
    for i in range(rows):
        acc += a[i, last] * a[(i + half) % rows, last]
    return acc


@njit(cache=True)
def jacobi_eigvals_compiled(a, tol, max_sweeps):
    """Eigenvalues of a real symmetric matrix by the cyclic Jacobi method.

    Sweeps rotate every upper-triangle pivot (p, q) in row order until the
    off-diagonal Frobenius norm drops to ``tol`` or ``max_sweeps`` is hit.
    The matrix is destroyed; the diagonal is returned unsorted.
    """
    n = a.shape[0]
    for _ in range(max_sweeps):
        off2 = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off2 += a[i, j] * a[i, j]
        if math.sqrt(2.0 * off2) <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                tau = (aqq - app) / (2.0 * apq)
                # asymptotic tangent for huge tau: avoids tau**2 overflow
                if abs(tau) > 1e12:
                    t = 1.0 / (2.0 * tau)
                elif tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                for i in range(n):
                    if i != p and i != q:
                        aip = a[i, p]
                        aiq = a[i, q]
                        a[i, p] = c * aip - s * aiq
                        a[p, i] = a[i, p]
                        a[i, q] = s * aip + c * aiq
                        a[q, i] = a[i, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
    return np.diag(a).copy()


def jacobi_eigvals_numpy(a, tol, max_sweeps):
    """Vectorized twin of :func:`jacobi_eigvals_compiled`.

    Same rotations and pivot order, but each rotation updates whole rows
    and columns at once so the interpreted path stays usable.
    """
    n = a.shape[0]
    for _ in range(max_sweeps):
        off = math.sqrt(2.0 * float(np.sum(np.triu(a, 1) ** 2)))
        if off <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                tau = (aqq - app) / (2.0 * apq)
                if abs(tau) > 1e12:
                    t = 1.0 / (2.0 * tau)
                elif tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
    return np.diag(a).copy()


if NUMBA_ENABLED:
    jacobi_eigvals = jacobi_eigvals_compiled
else:
    jacobi_eigvals = jacobi_eigvals_numpy
