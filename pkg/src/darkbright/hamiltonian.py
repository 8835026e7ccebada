"""Rotating-frame Hamiltonians.

Convention, used everywhere in the package: the physical field on a
transition is E(t) = (E0/2) (e^{-i nu t} + c.c.), the full Rabi frequency is
Omega = d E0 / hbar, and after the rotating-wave approximation the coupling
matrix element on a driven transition (upper, lower) is

    H[upper, lower] = -(Omega / 2) * exp(-i phase).

Each state s gets a frame frequency theta_s fixed by walking the transition
graph from the ground state with theta_upper - theta_lower = nu_slot, which
leaves the field detunings on the diagonal: H[s, s] = omega_s - theta_s.
For the tree-shaped schemes every carrier is free; the double-lambda cycle
closes only when nu4 = nu1 - nu2 + nu3 (equivalently detuning4 =
detuning1 - detuning2 + detuning3), which is required whenever slot omega4
actually carries a field, and makes the CW Hamiltonian time independent.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

from .errors import SchemeError
from .schemes import DriveField, LevelScheme, ResolvedField, resolve_fields

GROUND_STATE = "b"


def frame_diagonal(scheme: LevelScheme, resolved: Mapping[str, ResolvedField]
                   ) -> dict[str, float]:
    """Rotating-frame diagonal entries omega_s - theta_s per state, rad/s.

    Walks a spanning tree of the transition graph from the ground state; for
    any non-tree transition (double-lambda omega4) the carrier closure is
    checked if the slot is driven.
    """
    diag: dict[str, float] = {GROUND_STATE: 0.0}
    pending = list(scheme.transitions)
    closure_edges = []
    while pending:
        # Extend the tree along the first (canonical-order) usable edge, so
        # the spanning tree, and hence which slot carries the closure
        # constraint, is deterministic.
        for t in pending:
            f = resolved[t.slot]
            if t.lower in diag and t.upper not in diag:
                diag[t.upper] = diag[t.lower] + f.detuning
                pending.remove(t)
                break
            if t.upper in diag and t.lower not in diag:
                diag[t.lower] = diag[t.upper] - f.detuning
                pending.remove(t)
                break
        else:
            closure_edges = [t for t in pending
                             if t.upper in diag and t.lower in diag]
            if len(closure_edges) != len(pending):
                raise SchemeError(
                    f"transition graph is not connected to {GROUND_STATE!r}")
            break

    for t in closure_edges:
        f = resolved[t.slot]
        implied = diag[t.upper] - diag[t.lower]
        if f.peak_rabi != 0.0 and not np.isclose(f.detuning, implied, rtol=1e-9, atol=1e-3):
            raise SchemeError(
                f"slot {t.slot!r} violates carrier closure: its detuning must equal "
                f"{implied:.6e} rad/s for a time-independent rotating frame, got "
                f"{f.detuning:.6e} rad/s")
    return diag


def coupling_matrix(scheme: LevelScheme, slot: str, phase: float = 0.0) -> np.ndarray:
    """Unit-Rabi coupling term for one slot: -(1/2)(e^{-i phase}|u><l| + h.c.)."""
    t = scheme.transition(slot)
    h = np.zeros((scheme.dim, scheme.dim), dtype=complex)
    u, l = scheme.index(t.upper), scheme.index(t.lower)
    h[u, l] = -0.5 * np.exp(-1j * phase)
    h[l, u] = np.conj(h[u, l])
    return h


def build_hamiltonian(scheme: LevelScheme, fields: Mapping[str, DriveField],
                      t: float = 0.0) -> np.ndarray:
    """RWA Hamiltonian (rad/s) of the scheme at time t.

    One field per slot is mandatory.  Pulsed fields contribute their envelope
    value at t; the diagonal (detuning) part is time independent because each
    carrier is fixed.
    """
    resolved = resolve_fields(scheme, fields)
    diag = frame_diagonal(scheme, resolved)
    h = np.zeros((scheme.dim, scheme.dim), dtype=complex)
    for state, value in diag.items():
        i = scheme.index(state)
        h[i, i] = value
    for tr in scheme.transitions:
        f = resolved[tr.slot]
        h += f.rabi_at(t) * coupling_matrix(scheme, tr.slot, f.phase)
    return h
