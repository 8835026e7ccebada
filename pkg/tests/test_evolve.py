import numpy as np
import pytest
from scipy.linalg import expm

from darkbright import (DriveField, LindbladGenerator, PulseEnvelope,
                        SolverError, assemble_liouvillian, build_dissipator,
                        build_hamiltonian, build_scheme, evolve,
                        paper_rate_set, pure_density, steady_state, unvec, vec)

from conftest import cw_fields


def two_level_rabi_liouvillian(omega):
    h = np.array([[0, -omega / 2], [-omega / 2, 0]], dtype=complex)
    return assemble_liouvillian(h, [])


def test_zero_generator_is_identity_flow():
    L = assemble_liouvillian(np.zeros((2, 2)), [])
    rho0 = np.diag([0.25, 0.75]).astype(complex)
    res = evolve(rho0, L, np.linspace(0, 1e-9, 5))
    for state in res.states:
        assert np.allclose(state, rho0, atol=1e-12)


def test_lossless_rabi_oscillation_period():
    omega = 1e10
    L = two_level_rabi_liouvillian(omega)
    times = np.linspace(0, 2 * np.pi / omega, 17)
    res = evolve(pure_density_2(1), L, times, rtol=1e-10, atol=1e-14)
    expected = np.sin(omega * times / 2) ** 2
    assert np.allclose(res.states[:, 0, 0].real, expected, atol=1e-8)


def pure_density_2(index):
    rho = np.zeros((2, 2), dtype=complex)
    rho[index, index] = 1.0
    return rho


def test_trace_conserved_below_1e9(lam, moderate_rates):
    h = build_hamiltonian(lam, cw_fields(lam, rabi=2e11))
    L = assemble_liouvillian(h, build_dissipator(lam, moderate_rates))
    res = evolve(pure_density(lam, "b"), L, np.linspace(0, 2e-11, 21))
    for state in res.states:
        assert abs(np.trace(state) - 1.0) < 1e-9


def test_against_expm_oracle(lam, moderate_rates):
    h = build_hamiltonian(lam, cw_fields(lam, rabi=3e11,
                                         detunings={"omega1": 1e11}))
    L = assemble_liouvillian(h, build_dissipator(lam, moderate_rates))
    T = 5e-12
    res = evolve(pure_density(lam, "b"), L, np.array([0.0, T]),
                 rtol=1e-10, atol=1e-14)
    oracle = unvec(expm(L.matrix * T) @ vec(pure_density(lam, "b")))
    assert np.linalg.norm(res.final_state - oracle) < 1e-9


def test_halving_tolerance_self_consistency(lam, moderate_rates):
    h = build_hamiltonian(lam, cw_fields(lam, rabi=2e11))
    L = assemble_liouvillian(h, build_dissipator(lam, moderate_rates))
    grid = np.linspace(0, 1e-11, 5)
    coarse = evolve(pure_density(lam, "b"), L, grid, rtol=2e-8, atol=1e-12)
    fine = evolve(pure_density(lam, "b"), L, grid, rtol=1e-8, atol=1e-12)
    drift = max(np.linalg.norm(a - b) for a, b in zip(coarse.states, fine.states))
    assert drift < 2e-8 * 10  # within the coarser tolerance (safety 10)


def test_long_time_matches_steady_state(lam, moderate_rates):
    h = build_hamiltonian(lam, cw_fields(lam, rabi=2e11))
    L = assemble_liouvillian(h, build_dissipator(lam, moderate_rates))
    rho_ss = steady_state(L)
    ev = np.linalg.eigvals(L.matrix)
    decaying = -ev.real
    slow = decaying[decaying > 1e-6 * decaying.max()].min()
    res = evolve(pure_density(lam, "b"), L, np.array([0.0, 22.0 / slow]),
                 rtol=1e-10, atol=1e-14)
    assert np.linalg.norm(res.final_state - rho_ss) < 1e-6


def test_step_underflow_raises_with_timestamp():
    # an absurdly stiff generator over a huge window forces h below the floor
    h = np.array([[0, -1e18], [-1e18, 0]], dtype=complex)
    L = assemble_liouvillian(h, [])
    with pytest.raises(SolverError, match="underflow at t="):
        evolve(pure_density_2(1), L, np.array([0.0, 1.0]), rtol=1e-12,
               atol=1e-16, max_steps=10**9)


def test_max_steps_guard():
    h = np.array([[0, -1e12], [-1e12, 0]], dtype=complex)
    L = assemble_liouvillian(h, [])
    with pytest.raises(SolverError, match="exceeded"):
        evolve(pure_density_2(1), L, np.array([0.0, 1e-6]), max_steps=50)


def test_bad_grid_and_tolerances_rejected():
    L = assemble_liouvillian(np.zeros((2, 2)), [])
    with pytest.raises(SolverError):
        evolve(pure_density_2(0), L, np.array([0.0, -1.0]))
    with pytest.raises(SolverError):
        evolve(pure_density_2(0), L, np.array([0.0, 1.0]), rtol=0.0)


def test_gaussian_pi_pulse_inverts_two_level():
    # pulse area pi on a lossless resonant two-level system -> full inversion
    fwhm = 1e-12
    sigma = fwhm / (2 * np.sqrt(2 * np.log(2)))
    area_unit = sigma * np.sqrt(2 * np.pi)
    peak = np.pi / area_unit
    env = PulseEnvelope.gaussian(peak=peak, center=0.0, fwhm=fwhm)
    coupling = np.array([[0, -0.5], [-0.5, 0]], dtype=complex)
    from darkbright.liouville import commutator_superop
    gen = LindbladGenerator(((commutator_superop(coupling), env),))
    res = evolve(pure_density_2(1), gen, np.array([-4e-12, 4e-12]),
                 rtol=1e-11, atol=1e-14)
    assert res.final_state[0, 0].real == pytest.approx(1.0, abs=1e-7)


def test_generator_matches_hamiltonian_builder(lam, moderate_rates):
    env = PulseEnvelope.gaussian(peak=5e11, center=1e-12, fwhm=1e-12)
    fields = {"omega1": DriveField(rabi=env, detuning=2e11),
              "omega2": DriveField(rabi=3e11, detuning=-1e11)}
    gen = LindbladGenerator.from_model(lam, fields, moderate_rates)
    channels = build_dissipator(lam, moderate_rates)
    for t in (0.0, 0.7e-12, 1e-12, 2.5e-12):
        direct = assemble_liouvillian(build_hamiltonian(lam, fields, t=t),
                                      channels).matrix
        assert np.allclose(gen.matrix_at(t), direct, rtol=1e-12, atol=1e-3)


def test_positivity_validation_is_on_by_default(lam, moderate_rates):
    h = build_hamiltonian(lam, cw_fields(lam, rabi=2e11))
    L = assemble_liouvillian(h, build_dissipator(lam, moderate_rates))
    res = evolve(pure_density(lam, "b"), L, np.linspace(0, 1e-11, 11))
    for state in res.states:
        assert np.linalg.eigvalsh(state).min() > -1e-9
