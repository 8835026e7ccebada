"""Closed-form coherence observables and their engine-facing bridges.

The central object is the quasi-static probe coherence of a lambda scheme
driven on a-c and weakly probed on a-b,

    rho_ab = i * (n_ab + |W|^2 n_ca / (G_cb G_ca)) / (G_ab + |W|^2 / G_cb) * W_p

with n_ab = n_a - n_b, n_ca = n_c - n_a, complex linewidths
G_ab = gamma_ab + i d_p, G_ca = gamma_ca + i d_d,
G_cb = gamma_cb + i (d_p - d_d), and populations treated as fixed inputs.
The expression is stated in the convention where the field is written
E e^{-i nu t} + c.c. (no 1/2), i.e. its Rabi variables are HALF of the
engine's Omega = d E_peak / hbar, and the coupling sign is opposite.  The
exact bridge to the engine convention is therefore

    rho_ab(engine) = -formula(W = Omega_drive / 2, W_p = Omega_probe / 2),

which :func:`cw_probe_coherence_engine` applies; it was derived by solving
the three steady-state coherence equations of the engine's master equation
symbolically and holds whenever the probe is weak enough not to perturb the
Raman coherence (|Omega_probe/2|^2 small against |G_cb G_ca|).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .constants import CONSTANTS, dipole_to_si
from .conversions import intensity_from_rabi
from .dissipation import RateSet
from .errors import PhysicsError, SchemeError, SolverError
from .hamiltonian import build_hamiltonian
from .liouville import assemble_liouvillian, steady_state
from .schemes import DriveField, LevelScheme, SchemeKind


@dataclass(frozen=True)
class ComplexLinewidths:
    """Complex linewidths of the lambda scheme at given probe/drive detunings."""

    gamma_ab: float
    gamma_ca: float
    gamma_cb: float
    detuning_p: float = 0.0
    detuning_d: float = 0.0

    @property
    def Gamma_ab(self) -> complex:
        return self.gamma_ab + 1j * self.detuning_p

    @property
    def Gamma_ca(self) -> complex:
        return self.gamma_ca + 1j * self.detuning_d

    @property
    def Gamma_cb(self) -> complex:
        return self.gamma_cb + 1j * (self.detuning_p - self.detuning_d)

    @classmethod
    def from_rates(cls, rates: RateSet, detuning_p: float = 0.0,
                   detuning_d: float = 0.0) -> "ComplexLinewidths":
        return cls(gamma_ab=rates.gamma("a", "b"), gamma_ca=rates.gamma("c", "a"),
                   gamma_cb=rates.gamma("c", "b"),
                   detuning_p=detuning_p, detuning_d=detuning_d)


def cw_probe_coherence(populations: Sequence[float], lw: ComplexLinewidths,
                       drive_rabi: float | complex, probe_rabi: float | complex) -> complex:
    """Quasi-static probe coherence rho_ab, populations (n_a, n_b, n_c) fixed.

    Rabi arguments are in the formula's own (half) convention; see the module
    docstring and :func:`cw_probe_coherence_engine` for the engine bridge.
    """
    n_a, n_b, n_c = populations
    if min(n_a, n_b, n_c) < 0 or (n_a + n_b + n_c) > 1 + 1e-9:
        raise ValueError("populations must be >= 0 and sum to at most 1")
    w2 = abs(drive_rabi) ** 2
    if lw.Gamma_cb == 0:
        if w2 != 0:
            raise ValueError("Gamma_cb = 0 with a nonzero drive makes the "
                             "coherence expression singular")
        return 1j * (n_a - n_b) / lw.Gamma_ab * probe_rabi
    n_ab = n_a - n_b
    n_ca = n_c - n_a
    numerator = n_ab + w2 / (lw.Gamma_cb * lw.Gamma_ca) * n_ca
    denominator = lw.Gamma_ab + w2 / lw.Gamma_cb
    return 1j * numerator / denominator * probe_rabi


def cw_probe_coherence_engine(populations: Sequence[float], lw: ComplexLinewidths,
                              drive_rabi: float | complex,
                              probe_rabi: float | complex) -> complex:
    """Same coherence expressed for engine-convention (full) Rabi frequencies."""
    return -cw_probe_coherence(populations, lw, drive_rabi / 2.0, probe_rabi / 2.0)


def dark_bright_split(omega1: complex, omega2: complex
                      ) -> tuple[np.ndarray, np.ndarray]:
    """Dark/bright decomposition of the lower doublet {b, c} of a lambda scheme.

    ``omega1`` couples a-b and ``omega2`` couples a-c (complex values carry
    the drive phases).  The dark vector is defined operationally as the
    normalized ground-subspace vector annihilated by the coupling,
    <a|V|dark> = 0, i.e. dark ~ (omega2, -omega1) over (b, c); the bright
    vector is its orthogonal complement.  Both are phase-canonicalized so
    the largest-magnitude component is real positive.
    """
    w1 = complex(omega1)
    w2 = complex(omega2)
    norm = math.hypot(abs(w1), abs(w2))
    if norm == 0:
        raise ValueError("at least one Rabi frequency must be nonzero")
    dark = np.array([w2, -w1], dtype=complex) / norm
    bright = np.array([np.conj(w1), np.conj(w2)], dtype=complex) / norm
    return _canonical_phase(dark), _canonical_phase(bright)


def _canonical_phase(v: np.ndarray) -> np.ndarray:
    i = int(np.argmax(np.abs(v)))
    phase = v[i] / abs(v[i])
    return v / phase


@dataclass(frozen=True)
class ThresholdResult:
    """Rabi and intensity at the coherent-population-trapping threshold."""

    omega_threshold: float       # rad/s
    intensity_threshold: float   # W/cm^2
    mode: str


def cpt_threshold(gamma_cb: float, gamma_ab: float, mode: str = "paper_fit",
                  dipole_e_angstrom: float = 6.0) -> ThresholdResult:
    """Equality point of the trapping condition Omega1^2 + Omega2^2 > gamma_cb * Gamma_ab.

    Returns Omega_th = sqrt(gamma_cb * gamma_ab) and the corresponding beam
    intensity under the selected Rabi/intensity conversion mode.
    """
    if gamma_cb <= 0 or gamma_ab <= 0:
        raise ValueError("threshold rates must be > 0")
    omega = math.sqrt(gamma_cb * gamma_ab)
    intensity = intensity_from_rabi(omega, mode=mode,
                                    dipole_e_angstrom=dipole_e_angstrom)
    return ThresholdResult(omega, intensity, mode)


def threshold_margin(omega1: float, omega2: float, gamma_cb: float,
                     gamma_ab: float) -> float:
    """(Omega1^2 + Omega2^2) / (gamma_cb * Gamma_ab); > 1 means above threshold."""
    if gamma_cb <= 0 or gamma_ab <= 0:
        raise ValueError("threshold rates must be > 0")
    return (omega1**2 + omega2**2) / (gamma_cb * gamma_ab)


@dataclass(frozen=True)
class Susceptibility:
    """Complex probe susceptibility samples over a detuning/frequency grid."""

    probe_detunings: np.ndarray     # rad/s, ascending
    probe_frequencies: np.ndarray   # rad/s, absolute carrier (descending)
    chi: np.ndarray                 # complex
    density_cm3: float
    mode: str


def susceptibility(probe_detunings, scheme: LevelScheme,
                   fields: Mapping[str, DriveField], rates: RateSet, *,
                   density_cm3: float = 1e10, mode: str = "numeric",
                   probe_slot: str = "omega1", drive_slot: str = "omega2",
                   check_passivity: bool = True) -> Susceptibility:
    """Probe susceptibility chi(nu) = N d rho_ab / (eps0 E_p) over a detuning grid.

    ``mode="numeric"`` solves the full steady state per grid point;
    ``mode="analytic"`` evaluates the quasi-static coherence expression with
    all population in the ground state.  The probe field strength is taken
    from ``fields[probe_slot]`` and should sit in linear response
    (Omega_p <= 1e-2 gamma_ab; a warning is emitted otherwise).
    """
    if mode not in ("numeric", "analytic"):
        raise ValueError(f"unknown susceptibility mode {mode!r}")
    detunings = np.asarray(probe_detunings, dtype=float)
    if detunings.ndim != 1 or detunings.size == 0:
        raise ValueError("probe grid must be a 1-d array with >= 1 point")

    probe = fields[probe_slot]
    if probe.is_pulsed:
        raise SchemeError("susceptibility needs a CW probe field")
    probe_rabi = float(probe.rabi)
    if probe_rabi <= 0:
        raise SchemeError("probe Rabi frequency must be > 0 for a susceptibility")
    gamma_probe = rates.gamma(*scheme.transition(probe_slot).pair)
    if probe_rabi > 1e-2 * gamma_probe:
        warnings.warn("probe Rabi frequency exceeds 1e-2 of the optical "
                      "linewidth; susceptibility leaves linear response",
                      stacklevel=2)

    tr = scheme.transition(probe_slot)
    i_u, i_l = scheme.index(tr.upper), scheme.index(tr.lower)
    drive = fields[drive_slot]
    drive_detuning = float(drive.detuning or 0.0)

    rho_ab = np.empty(detunings.size, dtype=complex)
    if mode == "numeric":
        from .dissipation import build_dissipator
        channels = build_dissipator(scheme, rates)
        for n, delta in enumerate(detunings):
            pt_fields = dict(fields)
            pt_fields[probe_slot] = DriveField(rabi=probe.rabi, detuning=float(delta),
                                               phase=probe.phase)
            h = build_hamiltonian(scheme, pt_fields)
            try:
                rho = steady_state(assemble_liouvillian(h, channels))
            except SolverError as exc:
                raise SolverError(f"probe grid point {n} (detuning {delta:.6e} "
                                  f"rad/s): {exc}") from exc
            rho_ab[n] = rho[i_u, i_l]
    else:
        lw_rates = RateSet(coherence_rates=rates.coherence_rates,
                           decays=rates.decays,
                           dipole_e_angstrom=rates.dipole_e_angstrom)
        drive_rabi = 0.0 if drive.is_pulsed else float(drive.rabi)
        for n, delta in enumerate(detunings):
            lw = ComplexLinewidths.from_rates(lw_rates, detuning_p=float(delta),
                                              detuning_d=drive_detuning)
            rho_ab[n] = cw_probe_coherence_engine((0.0, 1.0, 0.0), lw,
                                                  drive_rabi, probe_rabi)

    d_si = dipole_to_si(rates.dipole_e_angstrom)
    e_probe = CONSTANTS.hbar * probe_rabi / d_si
    density_m3 = density_cm3 * 1e6
    chi = density_m3 * d_si * rho_ab / (CONSTANTS.epsilon_0 * e_probe)

    if check_passivity:
        floor = -1e-10 * max(float(np.max(np.abs(chi))), 1e-300)
        if float(np.min(chi.imag)) < floor:
            raise PhysicsError("negative probe absorption (gain) detected in an "
                               "absorbing configuration; Im chi sign check failed")

    omega_probe_transition = scheme.transition_frequency(probe_slot)
    return Susceptibility(probe_detunings=detunings,
                          probe_frequencies=omega_probe_transition - detunings,
                          chi=chi, density_cm3=density_cm3, mode=mode)


def refractive_index(chi: np.ndarray) -> np.ndarray:
    return np.sqrt(1.0 + chi.real)


def group_index(susc: Susceptibility, nu0: float) -> float:
    """Group index n_g = n(nu0) + nu0 * dn/dnu at probe frequency nu0 (rad/s).

    Uses a centered three-point finite difference on the nearest grid sample;
    nu0 must lie strictly inside the sampled frequency range.
    """
    order = np.argsort(susc.probe_frequencies)
    nu = susc.probe_frequencies[order]
    n_of_nu = refractive_index(susc.chi[order])
    if nu.size < 3:
        raise ValueError("need at least 3 grid points to differentiate")
    if not (nu[0] < nu0 < nu[-1]):
        raise ValueError(f"nu0={nu0:.6e} rad/s lies outside the sampled "
                         f"frequency range [{nu[0]:.6e}, {nu[-1]:.6e}]")
    i = int(np.argmin(np.abs(nu - nu0)))
    i = min(max(i, 1), nu.size - 2)
    # Non-uniform central difference, exact for parabolas.
    h1 = nu[i] - nu[i - 1]
    h2 = nu[i + 1] - nu[i]
    dn = (n_of_nu[i + 1] * h1**2 + n_of_nu[i] * (h2**2 - h1**2)
          - n_of_nu[i - 1] * h2**2) / (h1 * h2 * (h1 + h2))
    return float(n_of_nu[i] + nu0 * dn)


def fwm_generated_coherence(rho_ss: np.ndarray, scheme: LevelScheme,
                            generated_slot: str = "omega4") -> float:
    """Four-wave-mixing figure of merit: |rho| on the generated transition.

    Proportional to the amplitude of the field generated on the undriven
    slot of a double-lambda scheme in the local (non-propagating)
    approximation.
    """
    if scheme.kind is not SchemeKind.DOUBLE_LAMBDA:
        raise SchemeError("four-wave-mixing figure of merit requires the "
                          "double-lambda scheme")
    tr = scheme.transition(generated_slot)
    return float(abs(rho_ss[scheme.index(tr.upper), scheme.index(tr.lower)]))
