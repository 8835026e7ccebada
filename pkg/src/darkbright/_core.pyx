# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled adaptive Dormand-Prince 5(4) stepping kernel.

Mirror of ``darkbright._core_py`` (same tableau, same controller); see that
module for the algorithm description.  Supports constant and Gaussian
envelope coefficients; tabulated envelopes fall back to the NumPy kernel.
"""

import numpy as np

from libc.math cimport exp, fabs, fmax, fmin, pow, sqrt

from .errors import SolverError

cdef double SAFETY = 0.9
cdef double MIN_FACTOR = 0.2
cdef double MAX_FACTOR = 10.0
cdef double EPS = 2.220446049250313e-16

cdef double[6] C_NODES = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0]
cdef double[6][5] A_TABLE = [
    [0, 0, 0, 0, 0],
    [1.0 / 5.0, 0, 0, 0, 0],
    [3.0 / 40.0, 9.0 / 40.0, 0, 0, 0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0, 0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0],
]
cdef double[6] B_WEIGHTS = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0,
                            -2187.0 / 6784.0, 11.0 / 84.0]
cdef double[7] E_WEIGHTS = [71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0,
                            -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0]


cdef inline double _coefficient(long kind, double p0, double p1, double p2, double t) noexcept nogil:
    if kind == 0:
        return p0
    # Gaussian: p0=peak, p1=center, p2=sigma
    cdef double z = (t - p1) / p2
    return p0 * exp(-0.5 * z * z)


cdef void _rhs(double complex[:, :, ::1] terms, long[::1] kinds, double[:, ::1] params,
               double t, double complex[::1] y, double complex[::1] out, int n, int nterms) noexcept nogil:
    cdef int i, j, k
    cdef double c
    cdef double complex acc
    for i in range(n):
        out[i] = 0
    for k in range(nterms):
        c = _coefficient(kinds[k], params[k, 0], params[k, 1], params[k, 2], t)
        if c == 0.0:
            continue
        for i in range(n):
            acc = 0
            for j in range(n):
                acc = acc + terms[k, i, j] * y[j]
            out[i] = out[i] + c * acc


cdef double _rms_scaled(double complex[::1] x, double[::1] scale, int n) noexcept nogil:
    cdef int i
    cdef double total = 0.0, m
    for i in range(n):
        m = abs(x[i]) / scale[i]
        total += m * m
    return sqrt(total / n)


def propagate(double complex[:, :, ::1] terms, long[::1] kinds, double[:, ::1] params,
              samples, double complex[::1] y0, double t0, double t1,
              double rtol, double atol, double h_start=0.0, long max_steps=10_000_000):
    """Integrate from t0 to t1; returns (y, h_next, n_accepted, n_rejected)."""
    cdef int n = y0.shape[0]
    cdef int nterms = terms.shape[0]
    cdef long k_idx
    for k_idx in range(kinds.shape[0]):
        if kinds[k_idx] == 2:
            raise SolverError("tabulated envelopes are handled by the NumPy kernel")

    y_arr = np.array(y0, dtype=complex)
    stages_arr = np.empty((7, n), dtype=complex)
    ytmp_arr = np.empty(n, dtype=complex)
    ynew_arr = np.empty(n, dtype=complex)
    err_arr = np.empty(n, dtype=complex)
    scale_arr = np.empty(n, dtype=float)

    cdef double complex[::1] y = y_arr
    cdef double complex[:, ::1] stages = stages_arr
    cdef double complex[::1] ytmp = ytmp_arr
    cdef double complex[::1] ynew = ynew_arr
    cdef double complex[::1] err = err_arr
    cdef double[::1] scale = scale_arr

    cdef double t = t0
    cdef double h, min_step, err_norm, factor, c_stage, ay, anew
    cdef long n_acc = 0, n_rej = 0
    cdef bint rejected = False
    cdef int i, j, s

    _rhs(terms, kinds, params, t, y, stages[0], n, nterms)
    if h_start > 0:
        h = h_start
    else:
        h = _initial_step(terms, kinds, params, t, y, stages[0], t1, rtol, atol,
                          ytmp, ynew, n, nterms)

    while t < t1:
        min_step = 16.0 * EPS * fmax(fabs(t), fabs(t1))
        if h < min_step:
            raise SolverError(f"step size underflow at t={t:.9e} s")
        if h > t1 - t:
            h = t1 - t
        if n_acc + n_rej >= max_steps:
            raise SolverError(f"exceeded {max_steps} steps at t={t:.9e} s")

        for s in range(1, 6):
            for i in range(n):
                ytmp[i] = 0
                for j in range(s):
                    ytmp[i] = ytmp[i] + A_TABLE[s][j] * stages[j, i]
                ytmp[i] = y[i] + h * ytmp[i]
            _rhs(terms, kinds, params, t + C_NODES[s] * h, ytmp, stages[s], n, nterms)
        for i in range(n):
            ynew[i] = 0
            for j in range(6):
                ynew[i] = ynew[i] + B_WEIGHTS[j] * stages[j, i]
            ynew[i] = y[i] + h * ynew[i]
        _rhs(terms, kinds, params, t + h, ynew, stages[6], n, nterms)
        for i in range(n):
            err[i] = 0
            for j in range(7):
                err[i] = err[i] + E_WEIGHTS[j] * stages[j, i]
            err[i] = h * err[i]
            ay = abs(y[i])
            anew = abs(ynew[i])
            scale[i] = atol + rtol * fmax(ay, anew)
        err_norm = _rms_scaled(err, scale, n)

        if err_norm <= 1.0:
            if err_norm == 0.0:
                factor = MAX_FACTOR
            else:
                factor = fmin(MAX_FACTOR, SAFETY * pow(err_norm, -0.2))
            if rejected:
                factor = fmin(1.0, factor)
            t = t + h
            for i in range(n):
                y[i] = ynew[i]
                stages[0, i] = stages[6, i]
            h = h * factor
            rejected = False
            n_acc += 1
        else:
            h = h * fmax(MIN_FACTOR, SAFETY * pow(err_norm, -0.2))
            rejected = True
            n_rej += 1

    return y_arr, h, n_acc, n_rej


cdef double _initial_step(double complex[:, :, ::1] terms, long[::1] kinds,
                          double[:, ::1] params, double t0, double complex[::1] y0,
                          double complex[::1] f0, double t1, double rtol, double atol,
                          double complex[::1] y1, double complex[::1] f1,
                          int n, int nterms):
    cdef int i
    cdef double d0 = 0.0, d1 = 0.0, d2 = 0.0, s, h0, h1
    for i in range(n):
        s = atol + rtol * abs(y0[i])
        d0 += (abs(y0[i]) / s) ** 2
        d1 += (abs(f0[i]) / s) ** 2
    d0 = sqrt(d0 / n)
    d1 = sqrt(d1 / n)
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    h0 = fmin(h0, t1 - t0)
    for i in range(n):
        y1[i] = y0[i] + h0 * f0[i]
    _rhs(terms, kinds, params, t0 + h0, y1, f1, n, nterms)
    for i in range(n):
        s = atol + rtol * abs(y0[i])
        d2 += (abs(f1[i] - f0[i]) / s) ** 2
    d2 = sqrt(d2 / n) / h0
    if d1 <= 1e-15 and d2 <= 1e-15:
        h1 = fmax(1e-6, h0 * 1e-3)
    else:
        h1 = pow(0.01 / fmax(d1, d2), 0.2)
    return fmin(fmin(100 * h0, h1), t1 - t0)
