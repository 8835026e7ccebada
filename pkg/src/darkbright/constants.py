"""Physical constants (CODATA 2018) and unit conversions.

Everything inside the package runs in SI with angular frequencies in rad/s.
Inputs in spectroscopic units (eV, meV, e*Angstrom, W/cm^2) are converted at
the boundary through the helpers below; this module is the single source of
truth for those conversions.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    """Fixed table of fundamental constants, CODATA 2018 exact/recommended."""

    hbar: float = 1.054571817e-34        # J s
    e_charge: float = 1.602176634e-19    # C
    c_light: float = 299792458.0         # m / s
    epsilon_0: float = 8.8541878128e-12  # F / m

    @property
    def ev_in_rad_per_s(self) -> float:
        """Angular frequency of a 1 eV quantum."""
        return self.e_charge / self.hbar


CONSTANTS = PhysicalConstants()


def ev_to_angular(energy_ev: float) -> float:
    """Energy in eV to angular frequency in rad/s."""
    return energy_ev * CONSTANTS.ev_in_rad_per_s


def angular_to_ev(omega: float) -> float:
    """Angular frequency in rad/s to energy in eV."""
    return omega / CONSTANTS.ev_in_rad_per_s


def dipole_to_si(dipole_e_angstrom: float) -> float:
    """Dipole moment in e*Angstrom to C m."""
    return dipole_e_angstrom * CONSTANTS.e_charge * 1e-10
