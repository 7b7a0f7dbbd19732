"""Finite-difference cross-check for the slab solver.

The walled Hamiltonian -d2/dx2 + V(x) is discretized with the three-point
second difference on a uniform grid that includes both walls; the lowest
eigenvalues of the resulting symmetric tridiagonal matrix are found by
Sturm-count bisection.  The discretization error is O(h**2), so two grids
with h and h/2 can be Richardson-extrapolated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import DomainError
from .potentials import PotentialSpec, evaluate

__all__ = ["OracleResult", "fd_spectrum", "tridiagonal_lowest", "richardson", "observed_order"]


@dataclass(frozen=True)
class OracleResult:
    grid_points: int
    eigenvalues: tuple
    fine_grid_points: int | None = None
    fine_eigenvalues: tuple | None = None
    extrapolated: tuple | None = None

    @property
    def best(self):
        """Extrapolated values when available, else the single-grid ones."""
        return self.extrapolated if self.extrapolated is not None else self.eigenvalues


def tridiagonal_lowest(diag, off, count, max_iter=200):
    """Lowest ``count`` eigenvalues of a symmetric tridiagonal matrix.

    Bisection on Sturm counts, all levels advanced together, until each
    interval shrinks to a few ulp.
    """
    diag = np.asarray(diag, dtype=float)
    off = np.asarray(off, dtype=float)
    N = diag.size
    if not 1 <= count <= N:
        raise DomainError(f"count must be in [1, {N}], got {count}")
    off_sq = off * off
    radius = np.zeros(N)
    radius[:-1] += np.abs(off)
    radius[1:] += np.abs(off)
    lo = np.full(count, float(np.min(diag - radius)))
    hi = np.full(count, float(np.max(diag + radius)))
    target = np.arange(count)
    eps = np.finfo(float).eps
    for _ in range(max_iter):
        width = hi - lo
        if np.all(width <= 4 * eps * np.maximum(np.abs(lo), np.abs(hi)) + 1e-300):
            break
        mid = 0.5 * (lo + hi)
        below = kernels.sturm_counts(diag, off_sq, mid) > target
        hi = np.where(below, mid, hi)
        lo = np.where(below, lo, mid)
    return 0.5 * (lo + hi)


def _fd_eigs(spec, grid_points, levels):
    x, h = np.linspace(spec.a, spec.b, grid_points, retstep=True)
    interior = x[1:-1]
    diag = 2.0 / (h * h) + np.asarray(evaluate(spec, interior), dtype=float)
    off = np.full(interior.size - 1, -1.0 / (h * h))
    return tridiagonal_lowest(diag, off, levels)


def richardson(coarse, fine):
    """Second-order extrapolation (4 * fine - coarse) / 3, elementwise."""
    return tuple((4.0 * f - c) / 3.0 for c, f in zip(coarse, fine))


def observed_order(coarse, fine, exact):
    """Convergence order from errors on grids h and h/2."""
    ec, ef = abs(coarse - exact), abs(fine - exact)
    if ef == 0 or ec == 0:
        return math.inf
    return math.log2(ec / ef)


def fd_spectrum(
    spec: PotentialSpec, grid_points: int, levels: int, richardson_pair: bool = False
) -> OracleResult:
    """Lowest ``levels`` eigenvalues on ``grid_points`` nodes (walls included).

    With ``richardson_pair`` the run is repeated on ``2*(grid_points-1)+1``
    nodes, which halves h, and the two are extrapolated.
    """
    if int(levels) != levels or levels < 1:
        raise DomainError(f"levels must be >= 1, got {levels!r}")
    if int(grid_points) != grid_points or grid_points < levels + 2:
        raise DomainError(f"grid_points must be >= levels + 2 = {levels + 2}, got {grid_points!r}")
    grid_points, levels = int(grid_points), int(levels)
    coarse = tuple(float(e) for e in _fd_eigs(spec, grid_points, levels))
    if not richardson_pair:
        return OracleResult(grid_points, coarse)
    fine_points = 2 * (grid_points - 1) + 1
    fine = tuple(float(e) for e in _fd_eigs(spec, fine_points, levels))
    return OracleResult(grid_points, coarse, fine_points, fine, richardson(coarse, fine))
