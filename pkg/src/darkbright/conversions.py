"""Field-strength conversions between laboratory and model quantities.

Two conversion modes between beam intensity P (W/cm^2) and the Rabi
frequency are exposed and kept side by side on purpose:

``paper_fit``
    The empirical square-root fit Omega = 5e9 * sqrt(P) rad/s quoted for
    nanotube excitons with dipole moments of a few e*Angstrom.

``physical``
    Omega = d * E_peak / hbar with the peak field of a plane wave,
    E_peak = sqrt(2 I / (c eps0)), I in W/m^2.

For d = 6 e*Angstrom the two disagree by roughly a factor of two (the fit
does not state its field convention), so neither is silently "corrected";
callers pick a mode explicitly.
"""

from __future__ import annotations

import math

from .constants import CONSTANTS, dipole_to_si

RABI_FIT_COEFF = 5e9  # rad/s per sqrt(W/cm^2)

CONVERSION_MODES = ("paper_fit", "physical")


def _check_mode(mode: str) -> None:
    if mode not in CONVERSION_MODES:
        raise ValueError(f"unknown conversion mode {mode!r}; expected one of {CONVERSION_MODES}")


def peak_field_from_intensity(p_w_cm2: float) -> float:
    """Peak electric field (V/m) of a plane wave of intensity P in W/cm^2."""
    if p_w_cm2 < 0:
        raise ValueError("intensity must be >= 0")
    intensity_si = p_w_cm2 * 1e4  # W/m^2
    return math.sqrt(2.0 * intensity_si / (CONSTANTS.c_light * CONSTANTS.epsilon_0))


def rabi_from_intensity(p_w_cm2: float, mode: str = "paper_fit",
                        dipole_e_angstrom: float = 6.0) -> float:
    """Rabi frequency (rad/s) for a beam of intensity P (W/cm^2)."""
    _check_mode(mode)
    if p_w_cm2 < 0:
        raise ValueError("intensity must be >= 0")
    if mode == "paper_fit":
        return RABI_FIT_COEFF * math.sqrt(p_w_cm2)
    field = peak_field_from_intensity(p_w_cm2)
    return dipole_to_si(dipole_e_angstrom) * field / CONSTANTS.hbar


def intensity_from_rabi(omega: float, mode: str = "paper_fit",
                        dipole_e_angstrom: float = 6.0) -> float:
    """Inverse of :func:`rabi_from_intensity`; Omega in rad/s, result in W/cm^2."""
    _check_mode(mode)
    if omega < 0:
        raise ValueError("Rabi frequency must be >= 0")
    if mode == "paper_fit":
        return (omega / RABI_FIT_COEFF) ** 2
    field = omega * CONSTANTS.hbar / dipole_to_si(dipole_e_angstrom)
    intensity_si = 0.5 * CONSTANTS.c_light * CONSTANTS.epsilon_0 * field**2
    return intensity_si / 1e4


def intensity_from_pulse(energy_j: float, duration_s: float, spot_area_cm2: float) -> float:
    """Average intensity (W/cm^2) of a pulse of given energy, duration and spot."""
    if energy_j < 0:
        raise ValueError("pulse energy must be >= 0")
    if duration_s <= 0:
        raise ValueError("pulse duration must be > 0")
    if spot_area_cm2 <= 0:
        raise ValueError("spot area must be > 0")
    return energy_j / (duration_s * spot_area_cm2)
