"""Pulse envelopes for time-dependent drives.

An envelope is the slowly varying Rabi amplitude Omega(t) >= 0 multiplying a
fixed carrier; the carrier itself is removed by the rotating frame.  Three
shapes are supported: constant, Gaussian, and tabulated samples (linear
interpolation).  Every envelope declares a finite support window so
integrators and overlap checks know where the pulse lives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Gaussian support is truncated at +- this many standard deviations; the
# envelope there is below 2e-8 of the peak.
GAUSSIAN_SUPPORT_SIGMAS = 6.0

FWHM_TO_SIGMA = 1.0 / (2.0 * math.sqrt(2.0 * math.log(2.0)))

# Backend codes for the compiled stepping kernel.
KIND_CONSTANT = 0
KIND_GAUSSIAN = 1
KIND_SAMPLES = 2


@dataclass(frozen=True)
class PulseEnvelope:
    """Rabi amplitude Omega(t) in rad/s.

    Use the classmethod constructors; the raw fields are an internal layout
    shared with the compiled stepping kernel.
    """

    kind: int
    params: tuple[float, float, float] = (0.0, 0.0, 0.0)
    sample_times: np.ndarray | None = field(default=None, repr=False)
    sample_values: np.ndarray | None = field(default=None, repr=False)

    @classmethod
    def constant(cls, value: float) -> "PulseEnvelope":
        if value < 0:
            raise ValueError("constant Rabi amplitude must be >= 0")
        return cls(KIND_CONSTANT, (float(value), 0.0, 0.0))

    @classmethod
    def gaussian(cls, peak: float, center: float, fwhm: float) -> "PulseEnvelope":
        if peak < 0:
            raise ValueError("Gaussian peak amplitude must be >= 0")
        if fwhm <= 0:
            raise ValueError("Gaussian FWHM must be > 0")
        sigma = fwhm * FWHM_TO_SIGMA
        return cls(KIND_GAUSSIAN, (float(peak), float(center), sigma))

    @classmethod
    def from_samples(cls, times, values) -> "PulseEnvelope":
        t = np.asarray(times, dtype=float)
        v = np.asarray(values, dtype=float)
        if t.ndim != 1 or t.size < 2 or t.shape != v.shape:
            raise ValueError("need matching 1-d time and value arrays with >= 2 points")
        if np.any(np.diff(t) <= 0):
            raise ValueError("sample times must be strictly increasing")
        return cls(KIND_SAMPLES, (0.0, 0.0, 0.0), t, v)

    def __call__(self, t):
        if self.kind == KIND_CONSTANT:
            return self.params[0] * np.ones_like(np.asarray(t, dtype=float))
        if self.kind == KIND_GAUSSIAN:
            peak, center, sigma = self.params
            t = np.asarray(t, dtype=float)
            return peak * np.exp(-0.5 * ((t - center) / sigma) ** 2)
        return np.interp(np.asarray(t, dtype=float), self.sample_times, self.sample_values,
                         left=0.0, right=0.0)

    def value_at(self, t: float) -> float:
        return float(self(np.float64(t)))

    @property
    def peak(self) -> float:
        if self.kind == KIND_SAMPLES:
            return float(np.max(self.sample_values))
        return self.params[0]

    def support(self) -> tuple[float, float]:
        """Window outside which the envelope is treated as zero."""
        if self.kind == KIND_CONSTANT:
            return (-math.inf, math.inf)
        if self.kind == KIND_GAUSSIAN:
            peak, center, sigma = self.params
            half = GAUSSIAN_SUPPORT_SIGMAS * sigma
            return (center - half, center + half)
        return (float(self.sample_times[0]), float(self.sample_times[-1]))

    def core_window(self) -> tuple[float, float]:
        """Tighter window holding the bulk of the pulse; used for overlap tests."""
        if self.kind == KIND_GAUSSIAN:
            peak, center, sigma = self.params
            fwhm = sigma / FWHM_TO_SIGMA
            return (center - fwhm, center + fwhm)
        return self.support()
