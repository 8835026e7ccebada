import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from darkbright import (DecayChannel, DriveField, RateSet, SolverError,
                        assemble_liouvillian, build_dissipator,
                        build_hamiltonian, build_scheme, dark_bright_split,
                        paper_rate_set, population, pure_density, steady_state,
                        validate_density_matrix, vec)

from conftest import cw_fields, random_density


def test_zero_inputs_give_zero_map(lam):
    L = assemble_liouvillian(np.zeros((3, 3)), [])
    assert np.all(L.matrix == 0)


def test_lambda_liouvillian_dimension(lam, lam_rates):
    h = build_hamiltonian(lam, cw_fields(lam))
    L = assemble_liouvillian(h, build_dissipator(lam, lam_rates))
    assert L.matrix.shape == (9, 9)


def test_dimension_mismatch_rejected():
    with pytest.raises(SolverError):
        assemble_liouvillian(np.zeros((3, 3)), [np.zeros((2, 2))])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["lambda", "n", "ladder_lambda"]),
       st.floats(min_value=0, max_value=1e12),
       st.floats(min_value=-1e12, max_value=1e12))
def test_identity_is_left_null_vector(kind, rabi, detuning):
    scheme = build_scheme(kind)
    rates = paper_rate_set(scheme)
    h = build_hamiltonian(scheme, cw_fields(scheme, rabi=rabi,
                                            detunings={"omega1": detuning}))
    L = assemble_liouvillian(h, build_dissipator(scheme, rates))
    assert L.trace_defect() < 1e-10


def test_liouvillian_linearity(lam, lam_rates):
    rng = np.random.default_rng(3)
    h = build_hamiltonian(lam, cw_fields(lam))
    L = assemble_liouvillian(h, build_dissipator(lam, lam_rates))
    r1, r2 = random_density(rng, 3), random_density(rng, 3)
    a, b = 0.3 + 0.1j, -1.7 + 2j
    lhs = L.apply(a * r1 + b * r2)
    rhs = a * L.apply(r1) + b * L.apply(r2)
    assert np.allclose(lhs, rhs, rtol=1e-13, atol=1e-13 * np.linalg.norm(L.matrix))


def test_hermiticity_preserved_by_generator(lam, lam_rates):
    rng = np.random.default_rng(4)
    h = build_hamiltonian(lam, cw_fields(lam))
    L = assemble_liouvillian(h, build_dissipator(lam, lam_rates))
    rho = random_density(rng, 3)
    drho = L.apply(rho)
    assert np.allclose(drho, drho.conj().T)


def test_two_level_pure_decay_ends_in_ground():
    # states (a, b): pure decay, no field -> steady state |b><b|
    h = np.zeros((2, 2))
    c = np.zeros((2, 2), dtype=complex)
    c[1, 0] = np.sqrt(1e12)
    rho = steady_state(assemble_liouvillian(h, [c]))
    assert rho[1, 1].real == pytest.approx(1.0, abs=1e-12)


def test_two_level_saturation_closed_form():
    # hand-derived for the -Omega/2 coupling convention:
    # n_a = A / (Gamma + 2 A), A = (Omega^2/2) gamma_ab / (gamma_ab^2 + delta^2)
    gamma_pop = 1e12
    for omega, delta, gamma_deph in [(2e11, 0.0, 0.0), (5e11, 3e11, 2e11),
                                     (1e12, -5e11, 0.0)]:
        gamma_ab = gamma_pop / 2 + gamma_deph
        h = np.array([[delta, -omega / 2], [-omega / 2, 0]], dtype=complex)
        ops = [np.zeros((2, 2), dtype=complex)]
        ops[0][1, 0] = np.sqrt(gamma_pop)
        if gamma_deph > 0:
            ops.append(np.diag([np.sqrt(2 * gamma_deph), 0.0]).astype(complex))
        rho = steady_state(assemble_liouvillian(h, ops))
        a_term = (omega**2 / 2) * gamma_ab / (gamma_ab**2 + delta**2)
        expected = a_term / (gamma_pop + 2 * a_term)
        assert rho[0, 0].real == pytest.approx(expected, rel=1e-10)


def test_lambda_dark_state_is_steady_with_zero_gamma_cb(lam):
    rates = paper_rate_set(lam, gamma_cb=0.0, dark_decay=0.0)
    fields = {"omega1": DriveField(rabi=3e9), "omega2": DriveField(rabi=4e9)}
    h = build_hamiltonian(lam, fields)
    rho = steady_state(assemble_liouvillian(h, build_dissipator(lam, rates)))
    assert population(rho, lam, "a") < 1e-9
    dark, _ = dark_bright_split(3e9, 4e9)
    full = np.zeros(3, dtype=complex)
    full[lam.index("b")], full[lam.index("c")] = dark
    expected = np.outer(full, full.conj())
    assert np.linalg.norm(rho - expected) < 1e-9


def test_steady_state_residual_and_invariants(lam, lam_rates):
    h = build_hamiltonian(lam, cw_fields(lam, rabi=2e10))
    L = assemble_liouvillian(h, build_dissipator(lam, lam_rates))
    rho = steady_state(L)
    assert np.linalg.norm(L.matrix @ vec(rho)) < 1e-9 * np.linalg.norm(L.matrix)
    validate_density_matrix(rho)


def test_degenerate_null_space_reports_dimension(lam):
    # fully decoupled dark state: no drive on a-c, no c decay, no c dephasing
    rates = RateSet(coherence_rates={("a", "b"): 5e11, ("a", "c"): 5e11,
                                     ("b", "c"): 0.0},
                    decays=(DecayChannel("a", "b", 1e12),))
    fields = {"omega1": DriveField(rabi=1e10), "omega2": DriveField(rabi=0.0)}
    h = build_hamiltonian(lam, fields)
    L = assemble_liouvillian(h, build_dissipator(lam, rates))
    with pytest.raises(SolverError, match="dimensional"):
        steady_state(L)


def test_zero_generator_is_degenerate():
    with pytest.raises(SolverError, match="dimensional"):
        steady_state(assemble_liouvillian(np.zeros((2, 2)), []))


def test_validate_density_matrix_raises_on_violations():
    with pytest.raises(SolverError, match="trace"):
        validate_density_matrix(np.diag([0.6, 0.6]).astype(complex))
    with pytest.raises(SolverError, match="Hermitian"):
        validate_density_matrix(np.array([[0.5, 0.1], [0.4, 0.5]], dtype=complex))
    with pytest.raises(SolverError, match="eigenvalue"):
        validate_density_matrix(np.diag([1.2, -0.2]).astype(complex))
