"""Pure-NumPy adaptive Dormand-Prince 5(4) stepping kernel.

Fallback implementation of the hot loop behind :func:`darkbright.evolve`;
the compiled Cython module ``darkbright._core`` implements the identical
algorithm (same tableau, same step controller) and is preferred at import
time when available.  The right-hand side is y' = sum_k f_k(t) A_k y with
dense complex matrices A_k and scalar envelope coefficients f_k.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import SolverError

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 10.0
ERR_EXPONENT = -0.2  # error estimate of order 4 -> exponent -1/(4+1)

C_NODES = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0])
A_TABLE = [
    np.array([], dtype=float),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
]
B_WEIGHTS = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84])
E_WEIGHTS = np.array([71 / 57600, 0.0, -71 / 16695, 71 / 1920,
                      -17253 / 339200, 22 / 525, -1 / 40])

_EPS = float(np.finfo(float).eps)


def _coefficient(kind: int, params, samples, t: float) -> float:
    if kind == 0:
        return params[0]
    if kind == 1:
        peak, center, sigma = params
        return peak * math.exp(-0.5 * ((t - center) / sigma) ** 2)
    times, values = samples
    return float(np.interp(t, times, values, left=0.0, right=0.0))


def _rhs(terms, kinds, params, samples, t, y):
    out = np.zeros_like(y)
    for k in range(terms.shape[0]):
        c = _coefficient(kinds[k], params[k], samples[k], t)
        if c != 0.0:
            out += c * (terms[k] @ y)
    return out


def _rms(x) -> float:
    return float(np.sqrt(np.mean(np.abs(x) ** 2)))


def _initial_step(terms, kinds, params, samples, t0, y0, f0, t1, rtol, atol):
    scale = atol + rtol * np.abs(y0)
    d0 = _rms(y0 / scale)
    d1 = _rms(f0 / scale)
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    h0 = min(h0, t1 - t0)
    y1 = y0 + h0 * f0
    f1 = _rhs(terms, kinds, params, samples, t0 + h0, y1)
    d2 = _rms((f1 - f0) / scale) / h0
    if d1 <= 1e-15 and d2 <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1, t1 - t0)


def propagate(terms, kinds, params, samples, y0, t0, t1, rtol, atol,
              h_start=0.0, max_steps=10_000_000):
    """Integrate from t0 to t1; returns (y, h_next, n_accepted, n_rejected)."""
    y = np.array(y0, dtype=complex)
    t = float(t0)
    f = _rhs(terms, kinds, params, samples, t, y)
    h = h_start if h_start > 0 else _initial_step(
        terms, kinds, params, samples, t, y, f, t1, rtol, atol)
    n_acc = 0
    n_rej = 0
    rejected = False
    k = np.empty((7, y.size), dtype=complex)

    while t < t1:
        min_step = 16 * _EPS * max(abs(t), abs(t1))
        if h < min_step:
            raise SolverError(f"step size underflow at t={t:.9e} s")
        if h > t1 - t:
            h = t1 - t
        if n_acc + n_rej >= max_steps:
            raise SolverError(f"exceeded {max_steps} steps at t={t:.9e} s")

        k[0] = f
        for s in range(1, 6):
            ys = y + h * (A_TABLE[s] @ k[:s])
            k[s] = _rhs(terms, kinds, params, samples, t + C_NODES[s] * h, ys)
        y_new = y + h * (B_WEIGHTS @ k[:6])
        k[6] = _rhs(terms, kinds, params, samples, t + h, y_new)
        err = h * (E_WEIGHTS @ k)
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err_norm = _rms(err / scale)

        if err_norm <= 1.0:
            factor = MAX_FACTOR if err_norm == 0.0 else min(
                MAX_FACTOR, SAFETY * err_norm**ERR_EXPONENT)
            if rejected:
                factor = min(1.0, factor)
            t += h
            y = y_new
            f = k[6]
            h *= factor
            rejected = False
            n_acc += 1
        else:
            h *= max(MIN_FACTOR, SAFETY * err_norm**ERR_EXPONENT)
            rejected = True
            n_rej += 1

    return y, h, n_acc, n_rej
