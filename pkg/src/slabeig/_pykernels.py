"""Pure numpy implementation of the hot loops.

Mirrors ``_kernels.pyx`` function for function.  Loops run over slabs; the
energy axis of :func:`shoot_many` and the shift axis of :func:`sturm_counts`
are vectorized.
"""
import cmath
import math

import numpy as np

DEGENERACY_TOL = 1e-9
RESCALE_ABOVE = 2.0
RESCALE_BELOW = 1e-150


def _degeneracy_threshold(E):
    return DEGENERACY_TOL * np.maximum(1.0, np.abs(E))


def shoot_many(samples, h, energies, rescale=True):
    """Psi(b) for every energy, starting from Psi(a) = 0, Psi'(a) = 1.

    Returns ``(psi, log_scale)``; the de-scaled value is ``psi * exp(log_scale)``.
    """
    samples = np.asarray(samples, dtype=float)
    E = np.array(energies, dtype=float, ndmin=1)
    tol = _degeneracy_threshold(E)
    p = np.zeros_like(E)
    d = np.ones_like(E)
    lg = np.zeros_like(E)
    h2 = h * h

    with np.errstate(all="ignore"):
        for v in samples:
            q = v - E
            kappa = np.sqrt(np.abs(q))
            x = kappa * h
            deg = np.abs(q) <= tol
            forb = (q > 0) & ~deg
            allow = (q < 0) & ~deg

            if rescale:
                e2 = np.exp(-2.0 * x)
                ch = np.where(forb, 0.5 * (1.0 + e2), np.cos(x))
                sh = np.where(forb, -0.5 * np.expm1(-2.0 * x), np.sin(x))
                lg = lg + np.where(forb, x, 0.0)
            else:
                ch = np.where(forb, np.cosh(x), np.cos(x))
                sh = np.where(forb, np.sinh(x), np.sin(x))
            safe_k = np.where(deg, 1.0, kappa)
            sk = sh / safe_k
            ks = kappa * sh

            pn = ch * p + sk * d
            dn = np.where(forb, ks * p, -ks * p) + ch * d
            # series limit across a slab with V ~ E
            ps = p + d * h + q * (p * h2 / 2.0 + d * h2 * h / 6.0)
            ds = d + q * (p * h + d * h2 / 2.0)
            p = np.where(allow | forb, pn, ps)
            d = np.where(allow | forb, dn, ds)

            if rescale:
                m = np.maximum(np.abs(p), np.abs(d))
                r = (m > RESCALE_ABOVE) | ((m < RESCALE_BELOW) & (m > 0))
                if r.any():
                    p = np.where(r, p / m, p)
                    d = np.where(r, d / m, d)
                    lg = lg + np.where(r, np.log(np.where(r, m, 1.0)), 0.0)
    return p, lg


def _step(p, d, lg, q, h, tol):
    if abs(q) <= tol:
        h2 = h * h
        return (
            p + d * h + q * (p * h2 / 2.0 + d * h2 * h / 6.0),
            d + q * (p * h + d * h2 / 2.0),
            lg,
        )
    kappa = math.sqrt(abs(q))
    x = kappa * h
    if q > 0:
        ch = 0.5 * (1.0 + math.exp(-2.0 * x))
        sh = -0.5 * math.expm1(-2.0 * x)
        return ch * p + sh / kappa * d, kappa * sh * p + ch * d, lg + x
    c, s = math.cos(x), math.sin(x)
    return c * p + s / kappa * d, -kappa * s * p + c * d, lg


def propagate(samples, h, E):
    """(Psi, Psi', log_scale) at every slab boundary for a single energy."""
    samples = np.asarray(samples, dtype=float)
    nb = samples.size + 1
    psi = np.empty(nb)
    dpsi = np.empty(nb)
    logs = np.empty(nb)
    p, d, lg = 0.0, 1.0, 0.0
    psi[0], dpsi[0], logs[0] = p, d, lg
    tol = DEGENERACY_TOL * max(1.0, abs(E))
    for i, v in enumerate(samples):
        p, d, lg = _step(p, d, lg, v - E, h, tol)
        m = max(abs(p), abs(d))
        if m > RESCALE_ABOVE or 0 < m < RESCALE_BELOW:
            p /= m
            d /= m
            lg += math.log(m)
        psi[i + 1], dpsi[i + 1], logs[i + 1] = p, d, lg
    return psi, dpsi, logs


def quantify_one(samples, h, E, rescale=True):
    """B_n(E) from the P/Q recurrence; returns ``(B_scaled, log_scale)``.

    The recurrence is normalized so that B equals Psi(b) for the slab-0
    solution ``exp(-k0 t) - exp(k0 t)``.  Slabs with V ~ E switch to a
    (Psi, Psi') representation and back.
    """
    samples = [float(v) for v in samples]
    n = len(samples) - 1
    tol = DEGENERACY_TOL * max(1.0, abs(E))
    q = [v - E for v in samples]
    k = [cmath.sqrt(complex(qi, 0.0)) for qi in q]
    deg = [abs(qi) <= tol for qi in q]
    lg = 0.0
    h2 = h * h

    if deg[0]:
        in_pq = False
        psi, dpsi = 0j, -2.0 * k[0]
    else:
        in_pq = True
        P, Q = 1 + 0j, -1 + 0j

    for i in range(n + 1):
        if in_pq:
            ki = k[i]
            if rescale and q[i] > 0:
                x = ki.real * h
                a, b = math.exp(-2.0 * x), 1.0
                lg += x
            else:
                a, b = cmath.exp(-ki * h), cmath.exp(ki * h)
            if i == n:
                return a * P + b * Q, lg
            if deg[i + 1]:
                psi = a * P + b * Q
                dpsi = ki * (-a * P + b * Q)
                in_pq = False
            else:
                c = k[i + 1] / ki
                P, Q = (
                    ((c + 1) * a * P + (c - 1) * b * Q) / (2 * c),
                    ((c - 1) * a * P + (c + 1) * b * Q) / (2 * c),
                )
        else:
            qi = q[i]
            psi, dpsi = (
                psi + dpsi * h + qi * (psi * h2 / 2.0 + dpsi * h2 * h / 6.0),
                dpsi + qi * (psi * h + dpsi * h2 / 2.0),
            )
            if i == n:
                return psi, lg
            if not deg[i + 1]:
                kj = k[i + 1]
                P, Q = 0.5 * (psi - dpsi / kj), 0.5 * (psi + dpsi / kj)
                in_pq = True
        if rescale:
            m = max(abs(P), abs(Q)) if in_pq else max(abs(psi), abs(dpsi))
            if m > RESCALE_ABOVE or 0 < m < RESCALE_BELOW:
                if in_pq:
                    P /= m
                    Q /= m
                else:
                    psi /= m
                    dpsi /= m
                lg += math.log(m)
    raise AssertionError("unreachable")


def sturm_counts(diag, off_sq, shifts):
    """Number of eigenvalues strictly below each shift.

    ``diag`` is the main diagonal of a symmetric tridiagonal matrix and
    ``off_sq`` the squared off-diagonal.
    """
    diag = np.asarray(diag, dtype=float)
    off_sq = np.asarray(off_sq, dtype=float)
    s = np.array(shifts, dtype=float, ndmin=1)
    pivmin = 1e-300 * max(1.0, float(off_sq.max()) if off_sq.size else 1.0)
    count = np.zeros(s.shape, dtype=np.int64)
    q = diag[0] - s
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    count += q < 0
    for j in range(1, diag.size):
        q = diag[j] - s - off_sq[j - 1] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        count += q < 0
    return count
