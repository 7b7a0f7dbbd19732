# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the slab propagation and Sturm-count loops.

Same contracts as ``_pykernels``; results agree to rounding.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, exp, expm1, log, cos, sin, cosh, sinh, fabs

cnp.import_array()

cdef double DEGENERACY_TOL = 1e-9
cdef double RESCALE_ABOVE = 2.0
cdef double RESCALE_BELOW = 1e-150


cdef inline double _deg_threshold(double E) noexcept nogil:
    cdef double s = fabs(E)
    if s < 1.0:
        s = 1.0
    return DEGENERACY_TOL * s


# noexcept matters: without it Cython re-takes the GIL after every call
cdef inline void _step(double *p, double *d, double *lg, double q, double h,
                       double tol, bint rescale) noexcept nogil:
    cdef double kappa, x, ch, sh, c, s, pn, dn, h2
    if fabs(q) <= tol:
        h2 = h * h
        pn = p[0] + d[0] * h + q * (p[0] * h2 / 2.0 + d[0] * h2 * h / 6.0)
        dn = d[0] + q * (p[0] * h + d[0] * h2 / 2.0)
    elif q > 0:
        kappa = sqrt(q)
        x = kappa * h
        if rescale:
            # cosh and sinh with e^x divided out, from a single expm1
            c = expm1(-2.0 * x)
            ch = 1.0 + 0.5 * c
            sh = -0.5 * c
            lg[0] += x
        else:
            ch = cosh(x)
            sh = sinh(x)
        pn = ch * p[0] + sh / kappa * d[0]
        dn = kappa * sh * p[0] + ch * d[0]
    else:
        kappa = sqrt(-q)
        x = kappa * h
        c = cos(x)
        s = sin(x)
        pn = c * p[0] + s / kappa * d[0]
        dn = -kappa * s * p[0] + c * d[0]
    p[0] = pn
    d[0] = dn


cdef inline void _renorm(double *p, double *d, double *lg) noexcept nogil:
    cdef double m = fabs(p[0])
    if fabs(d[0]) > m:
        m = fabs(d[0])
    if m > RESCALE_ABOVE or (m < RESCALE_BELOW and m > 0):
        p[0] /= m
        d[0] /= m
        lg[0] += log(m)


def shoot_many(samples, double h, energies, bint rescale=True):
    cdef const double[::1] V = np.ascontiguousarray(samples, dtype=np.float64)
    E_arr = np.ascontiguousarray(np.array(energies, dtype=np.float64, ndmin=1))
    cdef const double[::1] E = E_arr
    cdef Py_ssize_t m = E.shape[0], ns = V.shape[0], j, i
    psi_arr = np.empty(m)
    log_arr = np.empty(m)
    cdef double[::1] psi = psi_arr
    cdef double[::1] logs = log_arr
    cdef double p, d, lg, tol, e
    with nogil:
        for j in range(m):
            e = E[j]
            tol = _deg_threshold(e)
            p = 0.0
            d = 1.0
            lg = 0.0
            for i in range(ns):
                _step(&p, &d, &lg, V[i] - e, h, tol, rescale)
                if rescale:
                    _renorm(&p, &d, &lg)
            psi[j] = p
            logs[j] = lg
    return psi_arr, log_arr


def propagate(samples, double h, double E):
    cdef const double[::1] V = np.ascontiguousarray(samples, dtype=np.float64)
    cdef Py_ssize_t ns = V.shape[0], i
    psi_arr = np.empty(ns + 1)
    dpsi_arr = np.empty(ns + 1)
    log_arr = np.empty(ns + 1)
    cdef double[::1] psi = psi_arr
    cdef double[::1] dpsi = dpsi_arr
    cdef double[::1] logs = log_arr
    cdef double p = 0.0, d = 1.0, lg = 0.0
    cdef double tol = _deg_threshold(E)
    psi[0] = p
    dpsi[0] = d
    logs[0] = lg
    with nogil:
        for i in range(ns):
            _step(&p, &d, &lg, V[i] - E, h, tol, True)
            _renorm(&p, &d, &lg)
            psi[i + 1] = p
            dpsi[i + 1] = d
            logs[i + 1] = lg
    return psi_arr, dpsi_arr, log_arr


cdef inline double complex _wavenumber(double q) noexcept nogil:
    if q >= 0:
        return sqrt(q) + 0j
    return sqrt(-q) * 1j


cdef inline double _cabs(double complex z) noexcept nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


def quantify_one(samples, double h, double E, bint rescale=True):
    cdef const double[::1] V = np.ascontiguousarray(samples, dtype=np.float64)
    cdef Py_ssize_t n = V.shape[0] - 1, i
    cdef double tol = _deg_threshold(E)
    cdef double lg = 0.0, qi, x, m, h2 = h * h, ma, mb
    cdef double complex P = 1.0, Q = -1.0, psi = 0.0, dpsi = 0.0
    cdef double complex ki, kj, c, a, b, aP, bQ, tmp
    cdef bint in_pq, deg_next

    qi = V[0] - E
    if fabs(qi) <= tol:
        in_pq = False
        psi = 0.0
        dpsi = -2.0 * _wavenumber(qi)
    else:
        in_pq = True

    for i in range(n + 1):
        qi = V[i] - E
        if in_pq:
            ki = _wavenumber(qi)
            if qi > 0:
                x = ki.real * h
                if rescale:
                    a = exp(-2.0 * x)
                    b = 1.0
                    lg += x
                else:
                    a = exp(-x)
                    b = exp(x)
            else:
                x = ki.imag * h
                a = cos(x) - 1j * sin(x)
                b = cos(x) + 1j * sin(x)
            aP = a * P
            bQ = b * Q
            if i == n:
                return complex(aP + bQ), lg
            deg_next = fabs(V[i + 1] - E) <= tol
            if deg_next:
                psi = aP + bQ
                dpsi = ki * (bQ - aP)
                in_pq = False
            else:
                c = _wavenumber(V[i + 1] - E) / ki
                tmp = ((c + 1) * aP + (c - 1) * bQ) / (2 * c)
                Q = ((c - 1) * aP + (c + 1) * bQ) / (2 * c)
                P = tmp
        else:
            tmp = psi + dpsi * h + qi * (psi * h2 / 2.0 + dpsi * h2 * h / 6.0)
            dpsi = dpsi + qi * (psi * h + dpsi * h2 / 2.0)
            psi = tmp
            if i == n:
                return complex(psi), lg
            if fabs(V[i + 1] - E) > tol:
                kj = _wavenumber(V[i + 1] - E)
                P = 0.5 * (psi - dpsi / kj)
                Q = 0.5 * (psi + dpsi / kj)
                in_pq = True
        if rescale:
            if in_pq:
                ma = _cabs(P)
                mb = _cabs(Q)
            else:
                ma = _cabs(psi)
                mb = _cabs(dpsi)
            m = ma if ma > mb else mb
            if m > RESCALE_ABOVE or (m < RESCALE_BELOW and m > 0):
                if in_pq:
                    P = P / m
                    Q = Q / m
                else:
                    psi = psi / m
                    dpsi = dpsi / m
                lg += log(m)
    raise AssertionError("unreachable")


def sturm_counts(diag, off_sq, shifts):
    cdef const double[::1] D = np.ascontiguousarray(diag, dtype=np.float64)
    cdef const double[::1] O = np.ascontiguousarray(off_sq, dtype=np.float64)
    s_arr = np.ascontiguousarray(np.array(shifts, dtype=np.float64, ndmin=1))
    cdef const double[::1] S = s_arr
    cdef Py_ssize_t m = S.shape[0], N = D.shape[0], j, i
    out = np.zeros(m, dtype=np.int64)
    cdef cnp.int64_t[::1] count = out
    cdef double omax = 1.0, q, sigma, pivmin
    for j in range(O.shape[0]):
        if O[j] > omax:
            omax = O[j]
    pivmin = 1e-300 * omax
    with nogil:
        for j in range(m):
            sigma = S[j]
            q = D[0] - sigma
            if fabs(q) < pivmin:
                q = -pivmin
            if q < 0:
                count[j] += 1
            for i in range(1, N):
                q = D[i] - sigma - O[i - 1] / q
                if fabs(q) < pivmin:
                    q = -pivmin
                if q < 0:
                    count[j] += 1
    return out
