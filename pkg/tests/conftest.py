import numpy as np
import pytest

from darkbright import DriveField, build_scheme, paper_rate_set


@pytest.fixture
def lam():
    return build_scheme("lambda")


@pytest.fixture
def lam_rates(lam):
    return paper_rate_set(lam)


@pytest.fixture
def moderate_rates(lam):
    # rate ratio 1e3 keeps explicit stepping affordable in dynamics tests
    return paper_rate_set(lam, gamma_cb=1e9, dark_decay=1e9)


def cw_fields(scheme, rabi=1e10, detunings=None):
    detunings = detunings or {}
    return {slot: DriveField(rabi=rabi, detuning=detunings.get(slot, 0.0))
            for slot in scheme.slots}


def random_density(rng, dim):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = m @ m.conj().T
    return rho / np.trace(rho)
