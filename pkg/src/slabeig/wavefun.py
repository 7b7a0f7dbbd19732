"""Eigenfunction reconstruction on the slab model.

Inside slab ``i`` (local coordinate ``t = x - x_i``) the solution is
``X_i exp(k_i t) + Y_i exp(-k_i t)``.  The slab states are obtained by
propagating (Psi, Psi') from both walls and joining the two solutions at a
boundary inside the classically allowed region.  Forward-only propagation
is not usable: any energy error excites the growing exponential in the
right-hand forbidden region, which for a harmonic well of half-width 10 is
amplified by roughly e^50.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson

from ._backend import kernels
from ._pykernels import DEGENERACY_TOL
from .errors import DomainError, StaleEnergyError
from .grid import Discretization

__all__ = ["WavefunctionTable", "reconstruct", "slab_state", "continuity_audit", "count_nodes"]

NODE_DEADBAND = 1e-9


@dataclass(frozen=True, eq=False)
class WavefunctionTable:
    """Normalized eigenfunction plus the per-slab data it was built from.

    ``coefficients[i] = (X_i, Y_i)`` are mantissas; the true pair is
    ``coefficients[i] * exp(log_scale[i])``.  For slabs flagged in
    ``degenerate`` the pair holds ``(Psi(x_i), Psi'(x_i))`` of the affine
    solution instead.  ``energy_offset`` is the first-order estimate of
    ``energy - eigenvalue`` from the derivative jump at the joint.
    """

    energy: float
    x: np.ndarray = field(repr=False)
    psi: np.ndarray = field(repr=False)
    coefficients: np.ndarray = field(repr=False)
    log_scale: np.ndarray = field(repr=False)
    degenerate: np.ndarray = field(repr=False)
    entry_psi: np.ndarray = field(repr=False)
    entry_dpsi: np.ndarray = field(repr=False)
    norm_residual: float = 0.0
    nodes: int = 0
    energy_offset: float = 0.0
    match_index: int = 0

    @property
    def out_points(self):
        return self.x.size

    @property
    def samples(self):
        return list(zip(self.x.tolist(), self.psi.tolist()))


def slab_state(p, d, q, t, tol):
    """Propagate (Psi, Psi') = (p, d) a distance ``t`` through constant ``V - E = q``."""
    p, d, q, t = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (p, d, q, t)))
    kappa = np.sqrt(np.abs(q))
    x = kappa * t
    deg = np.abs(q) <= tol
    forb = (q > 0) & ~deg
    safe_k = np.where(deg, 1.0, kappa)
    with np.errstate(over="ignore", invalid="ignore"):
        ch = np.where(forb, np.cosh(x), np.cos(x))
        sh = np.where(forb, np.sinh(x), np.sin(x))
        psi = ch * p + sh / safe_k * d
        dpsi = np.where(forb, kappa * sh, -kappa * sh) * p + ch * d
    t2 = t * t
    psi_s = p + d * t + q * (p * t2 / 2.0 + d * t2 * t / 6.0)
    dpsi_s = d + q * (p * t + d * t2 / 2.0)
    return np.where(deg, psi_s, psi), np.where(deg, dpsi_s, dpsi)


def count_nodes(psi, deadband=NODE_DEADBAND):
    """Strict sign changes of ``psi``, ignoring values within the dead-band."""
    psi = np.asarray(psi)
    big = psi[np.abs(psi) > deadband * np.max(np.abs(psi))]
    return int(np.count_nonzero(np.signbit(big[1:]) != np.signbit(big[:-1])))


def _log_abs(v):
    with np.errstate(divide="ignore"):
        return np.log(np.abs(v))


def reconstruct(
    disc: Discretization, E: float, out_points: int = 2001, stale_tol: float = 1e-6
) -> WavefunctionTable:
    """Normalized eigenfunction of the slab model at eigenvalue ``E``.

    ``out_points`` is rounded up to an odd count for Simpson quadrature.
    Raises :class:`StaleEnergyError` when the estimated distance of ``E``
    from an eigenvalue exceeds ``stale_tol * max(1, |E|)``.
    """
    if out_points < 2:
        raise DomainError(f"out_points must be >= 2, got {out_points}")
    out_points = int(out_points) | 1
    E = float(E)
    V = disc.samples
    n, h = disc.n, disc.h
    tol = DEGENERACY_TOL * max(1.0, abs(E))

    pl, dl, ll = kernels.propagate(V, h, E)
    pr, dr, lr = kernels.propagate(V[::-1], h, E)
    pr, dr, lr = pr[::-1], -dr[::-1], lr[::-1]

    allowed = np.nonzero(V < E)[0]
    if allowed.size == 0:
        raise StaleEnergyError(f"E={E!r} lies below the potential everywhere")
    lo = max(int(allowed[0]), 1)
    hi = min(int(allowed[-1]) + 1, n)

    # log magnitudes, relative to the joint value
    if lo <= hi:
        cand = np.arange(lo, hi + 1)
        m = int(cand[np.argmax(_log_abs(pl[cand]) + ll[cand])])
        joined = True
    else:
        m = n + 1
        joined = False

    nb = n + 2
    b_psi = np.empty(nb)
    b_dpsi = np.empty(nb)
    b_log = np.empty(nb)
    b_psi[: m + 1], b_dpsi[: m + 1], b_log[: m + 1] = pl[: m + 1], dl[: m + 1], ll[: m + 1]
    if joined:
        ratio = pl[m] / pr[m]
        b_psi[m + 1 :] = pr[m + 1 :] * ratio
        b_dpsi[m + 1 :] = dr[m + 1 :] * ratio
        b_log[m + 1 :] = lr[m + 1 :] - lr[m] + ll[m]
        joint_dpsi_right = dr[m] * ratio
    ref = _log_abs(pl[m]) + ll[m] if joined else float(np.max(_log_abs(pl) + ll))

    # slab i starts from boundary i; the slab right of the joint uses the right solution
    e_psi = b_psi[:-1].copy()
    e_dpsi = b_dpsi[:-1].copy()
    e_log = b_log[:-1] - ref
    if joined and m <= n:
        e_dpsi[m] = joint_dpsi_right

    x = np.linspace(disc.a, disc.b, out_points)
    idx = np.clip(((x - disc.a) / h).astype(np.int64), 0, n)
    t = x - disc.boundaries[idx]
    scale = np.exp(e_log)
    psi, _ = slab_state(e_psi[idx] * scale[idx], e_dpsi[idx] * scale[idx], V[idx] - E, t, tol)
    psi[0] = 0.0
    psi[-1] = 0.0

    norm2 = float(simpson(psi * psi, x=x))
    if not norm2 > 0:
        raise StaleEnergyError(f"E={E!r}: reconstructed function vanishes")

    if joined:
        psi_m = pl[m] * math.exp(ll[m] - ref)
        jump = (joint_dpsi_right - dl[m]) * math.exp(ll[m] - ref)
        offset = psi_m * jump / norm2
    else:
        offset = pl[-1] * dl[-1] * math.exp(2 * (ll[-1] - ref)) / norm2
    if abs(offset) > stale_tol * max(1.0, abs(E)):
        raise StaleEnergyError(
            f"E={E!r} is not an eigenvalue (estimated offset {offset:.3e})"
        )

    inv = 1.0 / math.sqrt(norm2)
    psi *= inv
    sign = 1.0
    big = np.nonzero(np.abs(psi) > NODE_DEADBAND * np.max(np.abs(psi)))[0]
    if big.size and psi[big[0]] < 0:
        sign = -1.0
        psi = -psi
    norm_residual = abs(float(simpson(psi * psi, x=x)) - 1.0)

    e_log = e_log + math.log(inv)
    e_psi *= sign
    e_dpsi *= sign
    k = np.sqrt((V - E).astype(complex))
    deg = np.abs(V - E) <= tol
    safe_k = np.where(deg, 1.0, k)
    coef = np.empty((n + 1, 2), dtype=complex)
    coef[:, 0] = np.where(deg, e_psi, 0.5 * (e_psi + e_dpsi / safe_k))
    coef[:, 1] = np.where(deg, e_dpsi, 0.5 * (e_psi - e_dpsi / safe_k))
    scale = np.exp(e_log)

    return WavefunctionTable(
        energy=E,
        x=x,
        psi=psi,
        coefficients=coef,
        log_scale=e_log,
        degenerate=deg,
        entry_psi=e_psi * scale,
        entry_dpsi=e_dpsi * scale,
        norm_residual=norm_residual,
        nodes=count_nodes(psi),
        energy_offset=float(offset),
        match_index=m,
    )


def continuity_audit(disc: Discretization, table: WavefunctionTable):
    """Largest mismatch of (Psi, Psi') across interior slab boundaries.

    Each slab is carried to its right edge and compared with the next
    slab's starting state.  Mismatches are relative to the largest
    ``|Psi|`` and ``|Psi'|`` among the slab states.
    """
    if disc.n == 0:
        return 0.0, 0.0
    tol = DEGENERACY_TOL * max(1.0, abs(table.energy))
    q = disc.samples[:-1] - table.energy
    p_end, d_end = slab_state(table.entry_psi[:-1], table.entry_dpsi[:-1], q, disc.h, tol)
    dp = np.max(np.abs(p_end - table.entry_psi[1:])) / np.max(np.abs(table.entry_psi))
    dd = np.max(np.abs(d_end - table.entry_dpsi[1:])) / np.max(np.abs(table.entry_dpsi))
    return float(dp), float(dd)
