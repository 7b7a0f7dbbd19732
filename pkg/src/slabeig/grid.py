"""Uniform slab partition of the walled interval."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .potentials import PotentialSpec, evaluate

__all__ = ["Discretization", "partition"]


@dataclass(frozen=True, eq=False)
class Discretization:
    """n+1 equal slabs on ``[a, b]`` with the potential frozen at each midpoint.

    Attributes
    ----------
    n : int
        There are ``n + 1`` slabs.
    h : float
        Slab width ``(b - a) / (n + 1)``.
    boundaries : ndarray, shape (n + 2,)
        ``x_i = a + i*h``, with the last entry set to ``b`` exactly.
    midpoints : ndarray, shape (n + 1,)
    samples : ndarray, shape (n + 1,)
        ``V_i = V(midpoints[i])``.
    """

    n: int
    h: float
    a: float
    b: float
    boundaries: np.ndarray = field(repr=False)
    midpoints: np.ndarray = field(repr=False)
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        for arr in (self.boundaries, self.midpoints, self.samples):
            arr.setflags(write=False)

    @property
    def slabs(self):
        return self.n + 1

    @classmethod
    def from_samples(cls, samples, a, b):
        """Build a partition directly from slab values (used for custom profiles)."""
        samples = np.array(samples, dtype=float)
        if samples.ndim != 1 or samples.size == 0:
            raise DomainError("need a non-empty 1-D array of slab values")
        n = samples.size - 1
        x, h = _boundaries(float(a), float(b), n)
        return cls(n, h, float(a), float(b), x, 0.5 * (x[:-1] + x[1:]), samples)

    def reversed(self):
        """Same partition seen from the right wall, mapped back onto ``[a, b]``."""
        return Discretization.from_samples(self.samples[::-1], self.a, self.b)


def _boundaries(a, b, n):
    if not b > a:
        raise DomainError(f"need b > a, got [{a}, {b}]")
    h = (b - a) / (n + 1)
    x = a + np.arange(n + 2) * h
    x[-1] = b
    return x, h


def partition(spec: PotentialSpec, n: int) -> Discretization:
    """Split ``[spec.a, spec.b]`` into ``n + 1`` slabs and sample V at midpoints."""
    if int(n) != n or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    n = int(n)
    x, h = _boundaries(spec.a, spec.b, n)
    rho = 0.5 * (x[:-1] + x[1:])
    return Discretization(n, h, spec.a, spec.b, x, rho, np.asarray(evaluate(spec, rho), dtype=float))
