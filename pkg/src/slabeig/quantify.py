"""Energy quantification function of the slab model.

Two routes evaluate the same boundary condition at x = b:

* the complex P/Q recurrence over the exponential slab solutions
  ``P_i exp(-k_i t) + Q_i exp(k_i t)``, whose final combination is B_n(E);
* a real propagation of (Psi, Psi') with cosh/sinh or cos/sin slab
  propagators, giving the shooting value Psi(b).

Both vanish on the same set of energies; in fact ``B_n = -2 k_0 * shoot``
identically, because the recurrence seeds ``P_0 = 1, Q_0 = -1`` describe
``Psi(a) = 0, Psi'(a) = -2 k_0``.  Root detection uses the real value since
B_n is complex wherever a slab is classically allowed.

Both routes divide positive factors out as they go and return the
natural log of the total alongside the mantissa.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from ._pykernels import DEGENERACY_TOL
from .grid import Discretization

__all__ = [
    "QuantValue",
    "wavenumber",
    "coupling",
    "quantification",
    "shoot_real",
    "shoot_many",
    "recurrence_factor",
    "is_degenerate",
]


@dataclass(frozen=True)
class QuantValue:
    """Scaled quantification values at one energy.

    True values are ``B_scaled * exp(log_scale)`` and
    ``shoot * exp(shoot_log_scale)``.
    """

    energy: float
    B_scaled: complex
    log_scale: float
    shoot: float
    shoot_log_scale: float

    @property
    def B(self) -> complex:
        """De-scaled B_n; may overflow to inf for deep wells."""
        return self.B_scaled * math.exp(self.log_scale)

    @property
    def shoot_value(self) -> float:
        return self.shoot * math.exp(self.shoot_log_scale)

    @property
    def log_abs_B(self) -> float:
        m = abs(self.B_scaled)
        return math.log(m) + self.log_scale if m > 0 else -math.inf

    @property
    def log_abs_shoot(self) -> float:
        m = abs(self.shoot)
        return math.log(m) + self.shoot_log_scale if m > 0 else -math.inf


def is_degenerate(V_i, E):
    """True when a slab is treated as V == E (affine solution)."""
    return abs(V_i - E) <= DEGENERACY_TOL * max(1.0, abs(E))


def wavenumber(V_i: float, E: float) -> complex:
    """Principal root of ``V_i - E``: positive real, positive imaginary, or 0."""
    return cmath.sqrt(complex(V_i - E, 0.0))


def coupling(V_i: float, V_j: float, E: float) -> complex | None:
    """Ratio ``k_i / k_j`` of principal wavenumbers.

    Returns ``None`` when slab ``j`` is degenerate (``V_j`` equal to ``E``
    within tolerance); callers route that slab through the affine path.
    """
    if is_degenerate(V_j, E):
        return None
    return wavenumber(V_i, E) / wavenumber(V_j, E)


def quantification(disc: Discretization, E: float, rescale: bool = True) -> QuantValue:
    """Evaluate B_n(E) and the shooting value at one energy.

    Consecutive slabs are linked by ``c = k_i / k_{i-1}`` (i.e.
    ``coupling(V_i, V_{i-1}, E)``) as

        P_i = [(c + 1) a P + (c - 1) b Q] / (2c)
        Q_i = [(c - 1) a P + (c + 1) b Q] / (2c)

    with ``a = exp(-k_{i-1} h)``, ``b = exp(k_{i-1} h)``.  The ``1/(2c)``
    factor makes B_n the boundary value of the wavefunction itself; see
    :func:`recurrence_factor` for the unnormalized recurrence.
    """
    E = float(E)
    if not math.isfinite(E):
        raise ValueError(f"energy must be finite, got {E!r}")
    b_scaled, lg = kernels.quantify_one(disc.samples, disc.h, E, rescale)
    psi, plg = kernels.shoot_many(disc.samples, disc.h, [E], rescale)
    return QuantValue(E, complex(b_scaled), float(lg), float(psi[0]), float(plg[0]))


def shoot_real(disc: Discretization, E: float, rescale: bool = True):
    """Real boundary mismatch Psi(b; E) as ``(mantissa, log_scale)``."""
    psi, lg = kernels.shoot_many(disc.samples, disc.h, [float(E)], rescale)
    return float(psi[0]), float(lg[0])


def shoot_many(disc: Discretization, energies, rescale: bool = True):
    """Vectorized :func:`shoot_real`; returns arrays ``(mantissa, log_scale)``."""
    return kernels.shoot_many(disc.samples, disc.h, np.asarray(energies, dtype=float), rescale)


def recurrence_factor(disc: Discretization, E: float) -> complex:
    """Ratio between the unnormalized recurrence and :func:`quantification`.

    Dropping the ``1/(2c)`` factor at every step multiplies B_n by
    ``prod 2 c_i = 2**n * k_n / k_0``.  Only meaningful when no slab is
    degenerate.
    """
    k0 = wavenumber(disc.samples[0], E)
    kn = wavenumber(disc.samples[-1], E)
    return (2.0**disc.n) * kn / k0
