import math

import pytest
from hypothesis import given, strategies as st

from darkbright import (CONSTANTS, angular_to_ev, ev_to_angular,
                        intensity_from_pulse, intensity_from_rabi,
                        rabi_from_intensity)


def test_ev_round_trip():
    assert ev_to_angular(1.0) == pytest.approx(1.5192674489e15, rel=1e-9)
    assert angular_to_ev(ev_to_angular(0.01)) == pytest.approx(0.01, rel=1e-14)


def test_paper_fit_at_one_w_cm2():
    assert rabi_from_intensity(1.0, "paper_fit") == 5e9


def test_zero_intensity_gives_zero_rabi():
    assert rabi_from_intensity(0.0, "paper_fit") == 0.0
    assert rabi_from_intensity(0.0, "physical") == 0.0


def test_physical_mode_matches_hand_calculation():
    # independent oracle: E_peak = sqrt(2 * 1e4 W/m^2 / (c eps0)),
    # Omega = d E / hbar with d = 6 e*Angstrom
    e_peak = math.sqrt(2 * 1e4 / (CONSTANTS.c_light * CONSTANTS.epsilon_0))
    assert e_peak == pytest.approx(2.745e3, rel=1e-3)
    omega = 6 * CONSTANTS.e_charge * 1e-10 * e_peak / CONSTANTS.hbar
    got = rabi_from_intensity(1.0, "physical", dipole_e_angstrom=6.0)
    assert got == pytest.approx(omega, rel=1e-14)
    assert got == pytest.approx(2.5e9, rel=0.01)


def test_negative_intensity_rejected():
    with pytest.raises(ValueError):
        rabi_from_intensity(-1.0, "paper_fit")
    with pytest.raises(ValueError):
        rabi_from_intensity(1.0, "warp_drive")


@given(st.floats(min_value=1e-6, max_value=1e6))
def test_rabi_homogeneity_and_monotonicity(p):
    for mode in ("paper_fit", "physical"):
        assert rabi_from_intensity(4 * p, mode) == pytest.approx(
            2 * rabi_from_intensity(p, mode), rel=1e-12)
        assert rabi_from_intensity(1.01 * p, mode) > rabi_from_intensity(p, mode)


@given(st.floats(min_value=1e2, max_value=1e12),
       st.sampled_from(["paper_fit", "physical"]))
def test_intensity_rabi_round_trip(omega, mode):
    assert intensity_from_rabi(rabi_from_intensity(
        intensity_from_rabi(omega, mode), mode), mode) == pytest.approx(
            intensity_from_rabi(omega, mode), rel=1e-12)


def test_pulse_intensity_example():
    assert intensity_from_pulse(1e-6, 1e-12, 1.0) == 1e6


def test_pulse_intensity_trivial_cases():
    assert intensity_from_pulse(0.0, 1e-12, 1.0) == 0.0
    assert intensity_from_pulse(2e-6, 1e-12, 2.0) == 1e6


def test_pulse_intensity_rejects_bad_inputs():
    with pytest.raises(ValueError):
        intensity_from_pulse(1e-6, 0.0, 1.0)
    with pytest.raises(ValueError):
        intensity_from_pulse(1e-6, 1e-12, -1.0)
    with pytest.raises(ValueError):
        intensity_from_pulse(-1e-6, 1e-12, 1.0)
