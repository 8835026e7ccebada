import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from darkbright import (DriveField, PulseEnvelope, SchemeError,
                        build_hamiltonian, build_scheme)

from conftest import cw_fields


def test_all_zero_fields_give_zero_matrix(lam):
    h = build_hamiltonian(lam, cw_fields(lam, rabi=0.0))
    assert np.all(h == 0)


def test_lambda_rwa_matrix_written_by_hand(lam):
    # common one-photon detuning Delta1, two-photon resonance:
    # diag (Delta1, 0, 0) over (a, b, c), couplings -Omega/2 on a-b and a-c
    delta1 = 3e9
    omega1, omega2 = 2e9, 4e9
    fields = {"omega1": DriveField(rabi=omega1, detuning=delta1),
              "omega2": DriveField(rabi=omega2, detuning=delta1)}
    expected = np.array([
        [delta1, -omega1 / 2, -omega2 / 2],
        [-omega1 / 2, 0, 0],
        [-omega2 / 2, 0, 0],
    ], dtype=complex)
    assert np.allclose(build_hamiltonian(lam, fields), expected, atol=1e-6)


def test_phase_lands_on_off_diagonal(lam):
    phi = 0.7
    fields = {"omega1": DriveField(rabi=2e9, phase=phi),
              "omega2": DriveField(rabi=0.0)}
    h = build_hamiltonian(lam, fields)
    assert h[0, 1] == pytest.approx(-1e9 * np.exp(-1j * phi))
    assert h[1, 0] == pytest.approx(np.conj(h[0, 1]))


def test_ladder_diagonal_accumulates_detunings():
    s = build_scheme("ladder_lambda")
    fields = {"omega1": DriveField(rabi=1e9, detuning=1e9),
              "omega2": DriveField(rabi=1e9, detuning=2e9),
              "omega3": DriveField(rabi=1e9, detuning=4e9)}
    h = build_hamiltonian(s, fields)
    diag = {st_: h[s.index(st_), s.index(st_)].real for st_ in s.states}
    assert diag["b"] == 0.0
    assert diag["a"] == pytest.approx(1e9)
    assert diag["ap"] == pytest.approx(3e9)
    assert diag["c"] == pytest.approx(-1e9)  # 1e9 + 2e9 - 4e9


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["lambda", "double_lambda", "n", "ladder_lambda"]),
       st.lists(st.floats(min_value=0, max_value=1e12), min_size=4, max_size=4),
       st.lists(st.floats(min_value=-1e12, max_value=1e12), min_size=4, max_size=4),
       st.lists(st.floats(min_value=0, max_value=2 * np.pi), min_size=4, max_size=4))
def test_hermiticity_for_random_inputs(kind, rabis, detunings, phases):
    s = build_scheme(kind)
    fields = {}
    for n, slot in enumerate(s.slots):
        det = detunings[n]
        if s.kind.value == "double_lambda" and slot == "omega4":
            det = detunings[0] - detunings[1] + detunings[2]
        fields[slot] = DriveField(rabi=rabis[n], detuning=det, phase=phases[n])
    h = build_hamiltonian(s, fields)
    scale = np.linalg.norm(h)
    assert np.linalg.norm(h - h.conj().T) <= 1e-12 * max(scale, 1.0)


def test_missing_slot_is_an_error(lam):
    with pytest.raises(SchemeError, match="missing field"):
        build_hamiltonian(lam, {"omega1": DriveField(rabi=1e9)})


def test_double_lambda_closure_enforced_when_driven():
    s = build_scheme("double_lambda")
    fields = {"omega1": DriveField(rabi=1e9, detuning=1e9),
              "omega2": DriveField(rabi=1e9, detuning=2e9),
              "omega3": DriveField(rabi=1e9, detuning=3e9),
              "omega4": DriveField(rabi=1e9, detuning=0.0)}
    with pytest.raises(SchemeError, match="closure"):
        build_hamiltonian(s, fields)
    # detuning4 = detuning1 - detuning2 + detuning3 closes the loop
    fields["omega4"] = DriveField(rabi=1e9, detuning=1e9 - 2e9 + 3e9)
    build_hamiltonian(s, fields)
    # an undriven slot may sit anywhere
    fields["omega4"] = DriveField(rabi=0.0, detuning=7e9)
    build_hamiltonian(s, fields)


def test_pulsed_field_evaluates_envelope_at_t(lam):
    env = PulseEnvelope.gaussian(peak=2e9, center=0.0, fwhm=1e-12)
    fields = {"omega1": DriveField(rabi=env), "omega2": DriveField(rabi=0.0)}
    h0 = build_hamiltonian(lam, fields, t=0.0)
    h_half = build_hamiltonian(lam, fields, t=-0.5e-12)
    assert h0[0, 1] == pytest.approx(-1e9)
    assert h_half[0, 1] == pytest.approx(-0.5e9)
