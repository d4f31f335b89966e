"""Tight-binding Hamiltonian on a strip lattice and its spectrum.

For a lattice with ring length ``2N`` threaded by a dimensionless flux
``phi``, the single-particle Hamiltonian is assembled bond by bond:

* on-site energies ``eps[n, m]`` on the diagonal (zero when omitted),
* each longitudinal bond ``(n, m) -> (n+1, m)`` carries the amplitude
  ``-t1 * exp(-2j*pi*phi/N)`` in the bond direction and the conjugate in
  the reverse direction,
* each transverse bond carries ``-t2``,
* each twist bond carries ``-t2`` in total (twist bonds are stored once
  per physical bond).

The matrix is Hermitian by construction: every stored bond writes an
amplitude and its conjugate transpose.  Since the flux enters only through
``exp(-2j*pi*phi/N)``, the whole spectrum is periodic in ``phi`` with
period ``N``.

Eigenvalues are computed with the in-house cyclic Jacobi solver from
:mod:`moebius_csr._kernels`.  A complex Hermitian ``H = X + iY`` is first
embedded as the real symmetric ``[[X, -Y], [Y, X]]``, whose spectrum is
that of ``H`` with every eigenvalue doubled; sorting and taking every
second entry undoes the doubling (degenerate levels of ``H`` stay
degenerate under the embedding, so the pairing survives ties).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from ._kernels import jacobi_eigvals
from .lattice import EdgeKind, MoebiusLattice

# convergence contract of the Jacobi solver: absolute off-diagonal
# Frobenius norm OFF_DIAG_TOL, hard sweep cap MAX_SWEEPS
OFF_DIAG_TOL = 1e-12
MAX_SWEEPS = 100


@dataclass(frozen=True, eq=False)
class HoppingParams:
    """Hopping amplitudes, flux, and optional on-site energies.

    ``epsilon`` has shape ``(2N, M)`` indexed as ``[n-1, m-1]``; ``None``
    means all on-site energies vanish.
    """

    t1: float
    t2: float
    phi: float = 0.0
    epsilon: np.ndarray | None = None


def assemble(lattice: MoebiusLattice, params: HoppingParams) -> np.ndarray:
    """Dense complex128 Hamiltonian of shape (2NM, 2NM)."""
    for name in ("t1", "t2", "phi"):
        value = float(getattr(params, name))
        if not math.isfinite(value):
            raise ValueError(f"{name} must be finite, got {value}")

    d = lattice.n_sites
    h = np.zeros((d, d), dtype=np.complex128)

    if params.epsilon is not None:
        eps = np.asarray(params.epsilon, dtype=np.float64)
        if eps.shape != (2 * lattice.N, lattice.M):
            raise ValueError(
                f"epsilon must have shape {(2 * lattice.N, lattice.M)}, "
                f"got {eps.shape}"
            )
        if not np.all(np.isfinite(eps)):
            raise ValueError("epsilon must be finite")
        for index in range(d):
            site = lattice.site_at(index)
            h[index, index] = eps[site.n - 1, site.m - 1]

    amp_long = -params.t1 * np.exp(-2j * np.pi * params.phi / lattice.N)
    amp_cross = complex(-params.t2)
    for kind, a, b in lattice.edges:
        i = lattice.site_index(a)
        j = lattice.site_index(b)
        amp = amp_long if kind is EdgeKind.LONGITUDINAL else amp_cross
        h[i, j] += amp
        h[j, i] += np.conj(amp)
    return h


def eigenvalues(
    h: np.ndarray,
    *,
    tol: float = OFF_DIAG_TOL,
    max_sweeps: int = MAX_SWEEPS,
) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending.

    Rejects non-square and non-Hermitian input (tolerance ``1e-12``
    relative to the largest entry).  Real symmetric input is solved
    directly; complex input goes through the doubling embedding described
    in the module docstring.
    """
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1] or h.shape[0] == 0:
        raise ValueError(f"expected a nonempty square matrix, got shape {h.shape}")
    scale = float(np.abs(h).max())
    defect = float(np.abs(h - h.conj().T).max())
    if defect > 1e-12 * max(1.0, scale):
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3e})")

    if np.iscomplexobj(h) and np.any(h.imag):
        x = np.ascontiguousarray(h.real, dtype=np.float64)
        y = np.ascontiguousarray(h.imag, dtype=np.float64)
        a = np.block([[x, -y], [y, x]])
        doubled = True
    else:
        a = np.array(h.real, dtype=np.float64, order="C", copy=True)
        doubled = False

    w = jacobi_eigvals(a, tol, max_sweeps)
    w.sort()
    return w[::2] if doubled else w


def total_energy(eigenvalues_: np.ndarray, n_electrons: int) -> float:
    """Ground-state energy with the lowest ``n_electrons`` levels filled."""
    w = np.asarray(eigenvalues_, dtype=np.float64)
    if w.ndim != 1:
        raise ValueError("eigenvalues must be a 1-d array")
    if not isinstance(n_electrons, (int, np.integer)):
        raise ValueError("n_electrons must be an integer")
    if not (0 <= n_electrons <= w.size):
        raise ValueError(
            f"n_electrons must be in 0..{w.size}, got {n_electrons}"
        )
    return float(np.sort(w)[: int(n_electrons)].sum())


def flux_sweep(
    lattice: MoebiusLattice,
    params: HoppingParams,
    phis: np.ndarray,
    n_electrons: int,
) -> np.ndarray:
    """Ground-state energy along a flux grid.

    Returns an array of shape ``(len(phis), 2)`` with columns
    ``(phi, total_energy)``.
    """
    grid = np.atleast_1d(np.asarray(phis, dtype=np.float64))
    if grid.size == 0:
        raise ValueError("flux grid must be nonempty")
    if not np.all(np.isfinite(grid)):
        raise ValueError("flux grid must be finite")

    out = np.empty((grid.size, 2), dtype=np.float64)
    for row, phi in enumerate(grid):
        h = assemble(lattice, replace(params, phi=float(phi)))
        w = eigenvalues(h)
        out[row, 0] = phi
        out[row, 1] = total_energy(w, n_electrons)
    return out
