"""Eigenvalue search: sign scan over an energy grid, then bisection.

The sign of the real shooting value plays the role of F(E); every sign
change between neighbouring grid energies brackets one level.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from . import quantify
from .errors import DomainError, PreconditionError, StaleEnergyError
from .grid import Discretization

__all__ = ["EigenLevel", "sign_of", "scan", "refine", "refine_many", "solve", "DEFAULT_DE", "DEFAULT_TOL"]

log = logging.getLogger(__name__)

DEFAULT_DE = 0.005
DEFAULT_TOL = 1e-8
ZERO_REL = 1e-14


@dataclass(frozen=True)
class EigenLevel:
    index: int
    energy: float
    bracket: tuple
    residual_shoot: float
    residual_B: float
    nodes: int | None = None
    diagnostic: str | None = None


def sign_of(disc: Discretization, E: float, scale: float | None = None) -> int:
    """Sign of the shooting value at ``E``.

    With ``scale`` (a de-scaled magnitude giving context, e.g. the shooting
    value at a bracket end) the result is 0 when ``|shoot| <= 1e-14 * scale``;
    otherwise 0 only for an exact zero.
    """
    s, lg = quantify.shoot_real(disc, E)
    if s == 0.0:
        return 0
    if scale is not None and scale > 0:
        if math.log(abs(s)) + lg <= math.log(ZERO_REL * scale):
            return 0
    return 1 if s > 0 else -1


def _energy_grid(E_min, E_max, dE):
    if not (math.isfinite(E_min) and math.isfinite(E_max)) or not E_min < E_max:
        raise DomainError(f"need E_min < E_max, got [{E_min}, {E_max}]")
    if not dE > 0:
        raise DomainError(f"dE must be positive, got {dE}")
    steps = int(math.floor((E_max - E_min) / dE + 1e-9))
    grid = E_min + np.arange(steps + 1) * dE
    if grid[-1] < E_max - 1e-12 * max(1.0, abs(E_max)):
        grid = np.append(grid, E_max)
    return grid


def scan(disc: Discretization, E_min: float, E_max: float, dE: float):
    """Brackets ``(E_lo, E_hi)`` of consecutive grid energies with a sign change.

    Two roots inside one grid cell cancel and are not seen here;
    :func:`solve` catches that through node counting.
    """
    grid = _energy_grid(E_min, E_max, dE)
    s = np.sign(quantify.shoot_many(disc, grid)[0])
    out = []
    for i in range(grid.size - 1):
        if s[i] * s[i + 1] < 0 or s[i] == 0:
            out.append((float(grid[i]), float(grid[i + 1])))
    if s[-1] == 0 and (grid.size < 2 or s[-2] != 0):
        out.append((float(grid[-2]), float(grid[-1])))
    return out


def _log_ratio(num_log, den_logs):
    den = max(den_logs)
    if num_log == -math.inf:
        return 0.0
    if den == -math.inf:
        return math.inf
    return math.exp(num_log - den)


def refine_many(disc: Discretization, brackets, tol: float = DEFAULT_TOL):
    """Bisect all brackets at once until each is narrower than ``tol``.

    Returned levels carry ``index = -1``; :func:`solve` numbers them.
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    if not brackets:
        return []
    br = np.array(brackets, dtype=float).reshape(-1, 2)
    lo, hi = br.min(axis=1), br.max(axis=1)
    lo0, hi0 = lo.copy(), hi.copy()
    s_lo = np.sign(quantify.shoot_many(disc, lo)[0])
    s_hi = np.sign(quantify.shoot_many(disc, hi)[0])
    bad = s_lo * s_hi > 0
    if bad.any():
        j = int(np.argmax(bad))
        raise PreconditionError(
            f"bracket ({lo[j]}, {hi[j]}) does not enclose a sign change"
        )
    # an exact zero at an end pins the root there
    hi = np.where(s_lo == 0, lo, hi)
    lo = np.where((s_hi == 0) & (s_lo != 0), hi, lo)

    active = (hi - lo) > tol
    while active.any():
        mid = 0.5 * (lo + hi)
        stuck = (mid <= lo) | (mid >= hi)
        active &= ~stuck
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        s_mid = np.sign(quantify.shoot_many(disc, mid[idx])[0])
        for j, s in zip(idx, s_mid):
            if s == 0:
                lo[j] = hi[j] = mid[j]
            elif s == s_lo[j]:
                lo[j] = mid[j]
            else:
                hi[j] = mid[j]
        active = (hi - lo) > tol

    # residuals are measured against the brackets as handed in
    levels = []
    for a, b, a0, b0 in zip(lo, hi, lo0, hi0):
        E = 0.5 * (a + b)
        q_mid = quantify.quantification(disc, E)
        q_lo = quantify.quantification(disc, a0)
        q_hi = quantify.quantification(disc, b0)
        levels.append(
            EigenLevel(
                index=-1,
                energy=float(E),
                bracket=(float(a), float(b)),
                residual_shoot=_log_ratio(q_mid.log_abs_shoot, (q_lo.log_abs_shoot, q_hi.log_abs_shoot)),
                residual_B=_log_ratio(q_mid.log_abs_B, (q_lo.log_abs_B, q_hi.log_abs_B)),
            )
        )
    return levels


def refine(disc: Discretization, bracket, tol: float = DEFAULT_TOL) -> EigenLevel:
    return refine_many(disc, [bracket], tol)[0]


def _node_points(disc, E_max):
    vmin = float(np.min(disc.samples))
    waves = (disc.b - disc.a) * math.sqrt(max(E_max - vmin, 0.0)) / math.pi
    return max(2001, int(40 * waves) + 1)


def _count_nodes(disc, levels, tol, points):
    # local import: wavefun pulls scipy, keep spectrum importable on its own
    from .wavefun import reconstruct

    out = []
    for lv in levels:
        if lv.nodes is not None:
            out.append(lv)
            continue
        try:
            table = reconstruct(disc, lv.energy, points, stale_tol=max(1e-6, tol))
            out.append(replace(lv, nodes=table.nodes))
        except StaleEnergyError as exc:
            out.append(replace(lv, nodes=-1, diagnostic=f"reconstruction failed: {exc}"))
    return out


def _suspect_cells(levels, E_min):
    """Energy intervals where node counts say a level is missing."""
    cells = []
    prev_nodes, prev_E = -1, E_min
    for lv in levels:
        if lv.nodes is None or lv.nodes < 0:
            return cells
        if lv.nodes - prev_nodes > 1:
            cells.append((prev_E, lv.bracket[0]))
        prev_nodes, prev_E = lv.nodes, lv.bracket[1]
    return cells


def solve(
    disc: Discretization,
    E_min: float,
    E_max: float,
    dE: float = DEFAULT_DE,
    tol: float = DEFAULT_TOL,
    count_nodes: bool = True,
):
    """All levels in ``[E_min, E_max]``, sorted and numbered from 0.

    Node counts are checked against the index.  Gaps in the node sequence
    trigger one rescan of the gap at ``dE / 10``; mismatches that survive
    are reported in ``EigenLevel.diagnostic``.
    """
    levels = refine_many(disc, scan(disc, E_min, E_max, dE), tol)
    levels.sort(key=lambda lv: lv.energy)
    if count_nodes:
        points = _node_points(disc, E_max)
        levels = _count_nodes(disc, levels, tol, points)
        cells = _suspect_cells(levels, E_min)
        if cells:
            log.info("node audit: rescanning %d cell(s) at dE=%g", len(cells), dE / 10)
            extra = []
            for lo, hi in cells:
                if hi > lo:
                    extra += refine_many(disc, scan(disc, lo, hi, dE / 10), tol)
            levels = _count_nodes(disc, levels + extra, tol, points)
            levels.sort(key=lambda lv: lv.energy)

    out = []
    for i, lv in enumerate(levels):
        diag = lv.diagnostic
        if count_nodes and diag is None and lv.nodes != i:
            diag = f"node count {lv.nodes} != index {i}; a level may be missing, reduce dE"
        out.append(replace(lv, index=i, diagnostic=diag))
    return out
