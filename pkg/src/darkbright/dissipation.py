"""Lindblad channels realizing a requested set of relaxation rates.

The model is specified the way the spectroscopy literature quotes it: a
population decay rate per channel plus a coherence decay rate gamma_ij per
level pair.  A Lindblad dissipator built from collapse operators
sqrt(rate)|to><from| makes the (i, j) coherence decay at the half-sum of the
total outflow rates of i and j, so each pair needs an extra pure-dephasing
contribution

    gamma_deph(i, j) = gamma_ij - (Gamma_out_i + Gamma_out_j) / 2,

which must be non-negative; otherwise the rate set is unphysical and
rejected.  The dephasing targets are realized exactly by diagonal operators
L_m = sum_s v_s^m |s><s| obtained from a Euclidean embedding: coherence
(i, j) then dephases at |v_i - v_j|^2 / 2, so placing one point per state
with squared distances 2*gamma_deph(i, j) reproduces every pair at once
(classical multidimensional scaling on the dephasing matrix).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from .errors import RateError
from .schemes import LevelScheme


class DecayChannel(NamedTuple):
    source: str
    target: str
    rate: float  # 1/s


def _norm_pair(i: str, j: str) -> tuple[str, str]:
    return (i, j) if i <= j else (j, i)


@dataclass(frozen=True)
class RateSet:
    """All relaxation constants of a scheme plus the transition dipole moment.

    ``coherence_rates`` maps unordered state pairs to the full decay rate of
    that coherence; ``decays`` lists population channels.  Rates in 1/s,
    dipole in e*Angstrom.
    """

    coherence_rates: Mapping[tuple[str, str], float]
    decays: tuple[DecayChannel, ...] = ()
    dipole_e_angstrom: float = 6.0

    def __post_init__(self):
        normalized = {}
        for (i, j), g in dict(self.coherence_rates).items():
            if i == j:
                raise RateError(f"coherence rate needs two distinct states, got ({i}, {j})")
            if g < 0:
                raise RateError(f"coherence rate for pair ({i}, {j}) must be >= 0")
            normalized[_norm_pair(i, j)] = float(g)
        object.__setattr__(self, "coherence_rates", normalized)
        channels = tuple(DecayChannel(*c) for c in self.decays)
        for c in channels:
            if c.rate < 0:
                raise RateError(f"decay rate {c.source}->{c.target} must be >= 0")
            if c.source == c.target:
                raise RateError(f"decay channel {c.source}->{c.target} must change state")
        object.__setattr__(self, "decays", channels)

    def gamma(self, i: str, j: str) -> float:
        return self.coherence_rates[_norm_pair(i, j)]

    def has_pair(self, i: str, j: str) -> bool:
        return _norm_pair(i, j) in self.coherence_rates

    def outflow(self, state: str) -> float:
        """Total population decay rate out of a state."""
        return sum(c.rate for c in self.decays if c.source == state)

    def decay_rate(self, source: str, target: str) -> float:
        return sum(c.rate for c in self.decays if c.source == source and c.target == target)


def _dephasing_targets(scheme: LevelScheme, rates: RateSet) -> dict[tuple[str, str], float]:
    targets = {}
    for (i, j), gamma in rates.coherence_rates.items():
        for s in (i, j):
            if s not in scheme.states:
                raise RateError(f"coherence pair ({i}, {j}) references unknown state {s!r}")
        half_sum = 0.5 * (rates.outflow(i) + rates.outflow(j))
        deph = gamma - half_sum
        scale = max(gamma, half_sum, 1.0)
        if deph < -1e-9 * scale:
            raise RateError(
                f"coherence rate for pair ({i}, {j}) is unrealizable: requested "
                f"{gamma:.6e} /s but population decay alone already gives "
                f"{half_sum:.6e} /s (pure dephasing would be negative)")
        targets[(i, j)] = max(deph, 0.0)
    return targets


def _dephasing_vectors(states: tuple[str, ...],
                       targets: Mapping[tuple[str, str], float],
                       rate_scale: float) -> np.ndarray:
    """Per-state coordinates v (rows: embedding axes) realizing the targets.

    ``rate_scale`` is the largest rate in the problem; Gram negativity below
    the round-off floor of that scale is clipped, anything larger means the
    pattern is genuinely not realizable by population-preserving channels.
    """
    involved = sorted({s for pair in targets for s in pair})
    n = len(involved)
    idx = {s: k for k, s in enumerate(involved)}
    pairs_needed = {_norm_pair(i, j) for a, i in enumerate(involved) for j in involved[a + 1:]}

    if set(targets) >= pairs_needed:
        # Complete pair specification: classical MDS embedding, exact per pair.
        dist2 = np.zeros((n, n))
        for (i, j), d in targets.items():
            dist2[idx[i], idx[j]] = dist2[idx[j], idx[i]] = 2.0 * d
        center = np.eye(n) - np.full((n, n), 1.0 / n)
        gram = -0.5 * center @ dist2 @ center
        evals, evecs = np.linalg.eigh(gram)
        floor = 64 * np.finfo(float).eps * max(rate_scale, 1.0)
        if evals[0] < -floor:
            worst = max(targets, key=targets.get)
            raise RateError(
                f"dephasing-rate pattern is not realizable by diagonal Lindblad "
                f"operators (Gram matrix not PSD); check pair {worst}")
        keep = evals > max(1e-14 * np.max(np.abs(evals)), 0.0)
        coords = (evecs[:, keep] * np.sqrt(evals[keep])).T  # axes x involved-states
    else:
        # Partial specification: one rate per state, (kappa_i + kappa_j)/2 = target.
        rows = []
        rhs = []
        for (i, j), d in targets.items():
            row = np.zeros(n)
            row[idx[i]] = row[idx[j]] = 0.5
            rows.append(row)
            rhs.append(d)
        kappa, *_ = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)
        scale = max(np.max(np.abs(rhs)), 1.0)
        resid = np.array(rows) @ kappa - np.array(rhs)
        if np.max(np.abs(resid)) > 1e-9 * scale or np.min(kappa) < -1e-9 * scale:
            raise RateError(
                "dephasing rates are inconsistent under per-state dephasing; "
                "specify the coherence rate of every pair to allow a correlated "
                "(multidimensional-scaling) realization")
        # One operator sqrt(kappa_s)|s><s| per state, i.e. one axis each.
        coords = np.diag(np.sqrt(np.clip(kappa, 0.0, None)))

    full = np.zeros((coords.shape[0], len(states)))
    for s, k in idx.items():
        full[:, states.index(s)] = coords[:, k]
    return full


def build_dissipator(scheme: LevelScheme, rates: RateSet) -> list[np.ndarray]:
    """Collapse operators (population decay + pure dephasing) for the scheme.

    Every requested pairwise coherence rate is realized exactly; a consistency
    check of the assembled operators against the targets runs on every call.
    """
    ops: list[np.ndarray] = []
    for c in rates.decays:
        if c.rate == 0.0:
            continue
        op = np.zeros((scheme.dim, scheme.dim), dtype=complex)
        op[scheme.index(c.target), scheme.index(c.source)] = np.sqrt(c.rate)
        ops.append(op)

    targets = _dephasing_targets(scheme, rates)
    if any(d > 0.0 for d in targets.values()):
        rate_scale = max([*rates.coherence_rates.values(),
                          *(c.rate for c in rates.decays), 1.0])
        vectors = _dephasing_vectors(scheme.states, targets, rate_scale)
        for axis in vectors:
            if np.max(np.abs(axis)) == 0.0:
                continue
            ops.append(np.diag(axis).astype(complex))

    _verify_realized(scheme, rates, ops, targets)
    return ops


def realized_coherence_rate(scheme: LevelScheme, ops: Iterable[np.ndarray],
                            i: str, j: str) -> float:
    """Decay rate of the (i, j) coherence under the given collapse operators.

    For channels of the form |t><s| and diagonal dephasing operators the
    off-diagonal element rho_ij decays at
    (sum_k <i|C_k^+ C_k|i> + <j|C_k^+ C_k|j>)/2 - Re sum_k <i|C_k|i><j|C_k|j>*.
    """
    ii, jj = scheme.index(i), scheme.index(j)
    rate = 0.0
    for op in ops:
        sq = op.conj().T @ op
        rate += 0.5 * (sq[ii, ii].real + sq[jj, jj].real)
        rate -= (op[ii, ii] * np.conj(op[jj, jj])).real
    return rate


def _verify_realized(scheme, rates, ops, targets):
    # The embedding is exact up to eigendecomposition round-off, which scales
    # with the largest rate in play, not with each pair's own rate.
    floor = 1e-12 * max([1.0, *targets.values(),
                         *(rates.outflow(s) for s in scheme.states)])
    for (i, j), gamma in rates.coherence_rates.items():
        got = realized_coherence_rate(scheme, ops, i, j)
        if abs(got - gamma) > 1e-9 * gamma + floor:
            raise RateError(
                f"internal dissipator check failed for pair ({i}, {j}): "
                f"requested {gamma:.6e} /s, assembled {got:.6e} /s")
