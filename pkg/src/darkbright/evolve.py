"""Time evolution of density matrices under (possibly pulsed) generators.

The generator is kept in the affine form L(t) = sum_k f_k(t) L_k with
constant superoperator matrices L_k and scalar envelopes f_k; for CW drives
there is a single constant term.  This is the structure consumed by the
stepping kernels in :mod:`darkbright.backend`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import backend
from .dissipation import RateSet, build_dissipator
from .errors import SolverError
from .hamiltonian import build_hamiltonian, coupling_matrix, frame_diagonal
from .liouville import (Liouvillian, assemble_liouvillian, commutator_superop,
                        unvec, validate_density_matrix, vec)
from .pulses import KIND_CONSTANT, PulseEnvelope
from .schemes import DriveField, LevelScheme, resolve_fields


@dataclass(frozen=True)
class LindbladGenerator:
    """Affine-in-envelopes generator L(t) = sum_k f_k(t) L_k."""

    terms: tuple[tuple[np.ndarray, PulseEnvelope], ...]

    @property
    def dim(self) -> int:
        return int(round(math.sqrt(self.terms[0][0].shape[0])))

    def matrix_at(self, t: float) -> np.ndarray:
        total = np.zeros_like(self.terms[0][0])
        for mat, env in self.terms:
            total += env.value_at(t) * mat
        return total

    def backend_arrays(self):
        mats = np.ascontiguousarray(np.stack([m for m, _ in self.terms]), dtype=complex)
        kinds = np.array([env.kind for _, env in self.terms], dtype=np.int64)
        params = np.array([env.params for _, env in self.terms], dtype=float)
        samples = [(env.sample_times, env.sample_values) for _, env in self.terms]
        return mats, kinds, params, samples

    @classmethod
    def constant(cls, liouvillian: Liouvillian) -> "LindbladGenerator":
        return cls(((liouvillian.matrix, PulseEnvelope.constant(1.0)),))

    @classmethod
    def from_model(cls, scheme: LevelScheme, fields: Mapping[str, DriveField],
                   rates: RateSet) -> "LindbladGenerator":
        """Split a driven scheme into a static part plus one term per pulsed slot.

        The static part carries the frame detunings, all CW couplings and the
        dissipator; each pulsed slot contributes its unit-Rabi coupling
        commutator scaled by the pulse envelope.
        """
        resolved = resolve_fields(scheme, fields)
        cw_fields = {}
        pulsed = []
        for slot, f in resolved.items():
            if f.is_pulsed:
                cw_fields[slot] = DriveField(rabi=0.0, detuning=f.detuning, phase=f.phase)
                pulsed.append((slot, f))
            else:
                cw_fields[slot] = DriveField(rabi=f.rabi, detuning=f.detuning, phase=f.phase)
        # Frame/closure validation must see the pulsed amplitudes.
        frame_diagonal(scheme, resolved)
        h_static = build_hamiltonian(scheme, cw_fields)
        channels = build_dissipator(scheme, rates)
        terms = [(assemble_liouvillian(h_static, channels).matrix,
                  PulseEnvelope.constant(1.0))]
        for slot, f in pulsed:
            h_unit = coupling_matrix(scheme, slot, f.phase)
            terms.append((commutator_superop(h_unit), f.rabi))
        return cls(tuple(terms))


@dataclass(frozen=True)
class EvolveResult:
    times: np.ndarray
    states: np.ndarray  # (n_times, d, d)
    steps_accepted: int
    steps_rejected: int
    backend: str

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]


def evolve(rho0: np.ndarray, generator: Liouvillian | LindbladGenerator,
           t_grid: Sequence[float], *, rtol: float = 1e-8, atol: float = 1e-12,
           validate: bool = True, trace_tol: float = 1e-9, psd_floor: float = -1e-9,
           max_steps: int = 10_000_000) -> EvolveResult:
    """Adaptive embedded Runge-Kutta integration of the master equation.

    ``t_grid`` is an increasing array of output times starting at the initial
    time.  Every reported state is symmetrized and, with ``validate`` on,
    checked for trace error below ``trace_tol`` and spectrum above
    ``psd_floor``; violations raise :class:`SolverError` instead of being
    projected away.
    """
    if isinstance(generator, Liouvillian):
        generator = LindbladGenerator.constant(generator)
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size < 2 or np.any(np.diff(t_grid) <= 0):
        raise SolverError("t_grid must be a strictly increasing array with >= 2 points")
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (generator.dim, generator.dim):
        raise SolverError(f"initial state shape {rho0.shape} does not match "
                          f"generator dimension {generator.dim}")
    if rtol <= 0 or atol <= 0:
        raise SolverError("tolerances must be positive")
    if validate:
        validate_density_matrix(rho0, trace_tol=trace_tol, psd_floor=psd_floor,
                                context="initial state")

    mats, kinds, params, samples = generator.backend_arrays()
    name = backend.active_backend(kinds)
    states = np.empty((t_grid.size, generator.dim, generator.dim), dtype=complex)
    states[0] = 0.5 * (rho0 + rho0.conj().T)
    y = vec(rho0)
    h = 0.0
    acc = rej = 0
    for n in range(1, t_grid.size):
        y, h, a, r = backend.propagate(mats, kinds, params, samples, y,
                                       t_grid[n - 1], t_grid[n], rtol, atol,
                                       h_start=h, max_steps=max_steps,
                                       backend=name)
        acc += a
        rej += r
        rho = unvec(y)
        rho = 0.5 * (rho + rho.conj().T)
        states[n] = rho
        if validate:
            validate_density_matrix(rho, trace_tol=trace_tol, psd_floor=psd_floor,
                                    context=f"state at t={t_grid[n]:.6e} s")
    return EvolveResult(times=t_grid, states=states, steps_accepted=acc,
                        steps_rejected=rej, backend=name)
