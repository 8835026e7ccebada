"""Liouvillian superoperators and steady states.

Density matrices are column-stacked: vec(rho)[j*d + i] = rho[i, j], so
vec(A rho B) = (B^T kron A) vec(rho).  The generator of the master equation

    d rho / dt = -i [H, rho] + sum_k ( C_k rho C_k^+ - {C_k^+ C_k, rho} / 2 )

then becomes a dense (d^2 x d^2) complex matrix.  Trace preservation shows
up as vec(I) being a left null vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import SolverError


def vec(rho: np.ndarray) -> np.ndarray:
    return np.asarray(rho, dtype=complex).reshape(-1, order="F")

def unvec(v: np.ndarray) -> np.ndarray:
    d = int(round(np.sqrt(v.size)))
    return np.asarray(v, dtype=complex).reshape((d, d), order="F")


def commutator_superop(h: np.ndarray) -> np.ndarray:
    """Superoperator of -i[H, .] for Hermitian H."""
    d = h.shape[0]
    eye = np.eye(d)
    return -1j * (np.kron(eye, h) - np.kron(h.T, eye))


def dissipator_superop(c: np.ndarray) -> np.ndarray:
    """Superoperator of one Lindblad channel C."""
    d = c.shape[0]
    eye = np.eye(d)
    csq = c.conj().T @ c
    return (np.kron(c.conj(), c)
            - 0.5 * np.kron(eye, csq)
            - 0.5 * np.kron(csq.T, eye))


@dataclass(frozen=True)
class Liouvillian:
    """Dense linear generator acting on vectorized density matrices."""

    matrix: np.ndarray  # (d^2, d^2) complex

    @property
    def dim(self) -> int:
        return int(round(np.sqrt(self.matrix.shape[0])))

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """d rho / dt for a matrix-shaped rho."""
        return unvec(self.matrix @ vec(rho))

    def trace_defect(self) -> float:
        """Norm of vec(I)^T L relative to ||L||; ~0 for trace-preserving maps."""
        d = self.dim
        left = vec(np.eye(d)) @ self.matrix
        norm = np.linalg.norm(self.matrix)
        return float(np.linalg.norm(left) / norm) if norm > 0 else 0.0


def assemble_liouvillian(h: np.ndarray, channels: Sequence[np.ndarray] | Iterable[np.ndarray]
                         ) -> Liouvillian:
    """Build the generator from a Hamiltonian (rad/s) and collapse operators."""
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise SolverError("Hamiltonian must be a square matrix")
    total = commutator_superop(h)
    for c in channels:
        c = np.asarray(c, dtype=complex)
        if c.shape != h.shape:
            raise SolverError(
                f"collapse operator shape {c.shape} does not match Hamiltonian {h.shape}")
        total += dissipator_superop(c)
    return Liouvillian(total)


def validate_density_matrix(rho: np.ndarray, *, trace_tol: float = 1e-9,
                            herm_tol: float = 1e-10, psd_floor: float = -1e-9,
                            context: str = "state") -> None:
    """Assert trace-one, Hermiticity and positivity; raises SolverError.

    Violations are reported loudly rather than projected away, so integrator
    or assembly bugs cannot hide behind a cleanup step.
    """
    trace_err = abs(np.trace(rho) - 1.0)
    if trace_err > trace_tol:
        raise SolverError(f"{context}: trace deviates from 1 by {trace_err:.3e}")
    herm_err = np.linalg.norm(rho - rho.conj().T)
    scale = max(np.linalg.norm(rho), 1.0)
    if herm_err > herm_tol * scale:
        raise SolverError(f"{context}: non-Hermitian by {herm_err:.3e}")
    min_eig = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min())
    if min_eig < psd_floor:
        raise SolverError(f"{context}: negative eigenvalue {min_eig:.3e} below floor {psd_floor:.1e}")


def steady_state(liouvillian: Liouvillian, *, null_tol: float = 1e-10,
                 residual_tol: float = 1e-9) -> np.ndarray:
    """Unique stationary density matrix of the generator.

    The singular spectrum is checked first: exactly one singular value may
    vanish (relative to ``null_tol``); a larger stationary subspace is an
    error, typically signalling an exactly decoupled level.  The solve
    replaces the last row (a population row) with the trace constraint; if
    its residual is poor the smallest singular vector is used instead.
    """
    L = liouvillian.matrix
    n = L.shape[0]
    d = liouvillian.dim

    svals = np.linalg.svd(L, compute_uv=False)
    norm = svals[0]
    if norm == 0.0:
        raise SolverError(f"stationary space is {n}-dimensional (zero generator)")
    null_dim = int(np.sum(svals <= null_tol * norm))
    if null_dim > 1:
        raise SolverError(
            f"stationary space is {null_dim}-dimensional within tolerance; "
            "the scheme contains decoupled dynamics")
    if null_dim == 0:
        raise SolverError("no stationary state within tolerance of the null space")

    trace_row = vec(np.eye(d)).conj()
    m = L.copy()
    m[-1, :] = trace_row * norm
    b = np.zeros(n, dtype=complex)
    b[-1] = norm

    rho = None
    try:
        x = np.linalg.solve(m, b)
        if np.linalg.norm(L @ x) <= residual_tol * norm * np.linalg.norm(x):
            rho = unvec(x)
    except np.linalg.LinAlgError:
        pass
    if rho is None:
        _, _, vh = np.linalg.svd(L)
        x = vh[-1].conj()
        rho = unvec(x)
        if abs(np.trace(rho)) < 1e-12:
            raise SolverError("stationary null vector is traceless; no physical steady state")

    rho = rho / np.trace(rho)
    rho = 0.5 * (rho + rho.conj().T)
    resid = np.linalg.norm(L @ vec(rho)) / norm
    if resid > residual_tol:
        raise SolverError(f"steady-state residual {resid:.3e} exceeds {residual_tol:.1e}")
    validate_density_matrix(rho, context="steady state")
    return rho


def basis_ket(scheme, state: str) -> np.ndarray:
    k = np.zeros(scheme.dim, dtype=complex)
    k[scheme.index(state)] = 1.0
    return k

def pure_density(scheme, state: str) -> np.ndarray:
    k = basis_ket(scheme, state)
    return np.outer(k, k.conj())

def population(rho: np.ndarray, scheme, state: str) -> float:
    return float(rho[scheme.index(state), scheme.index(state)].real)

def coherence(rho: np.ndarray, scheme, upper: str, lower: str) -> complex:
    return complex(rho[scheme.index(upper), scheme.index(lower)])
