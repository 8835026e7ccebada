"""Level schemes for exciton quantum-coherence experiments.

Four canonical excitation topologies over the single-walled nanotube exciton
states are provided.  The common ingredients are the ground state ``b``, the
one-photon-allowed (bright) exciton ``a`` at the optical gap, the dipole
forbidden (dark) exciton ``c`` sitting a few to tens of meV below it, and,
for the four-level schemes, a second excited level ``ap`` (e.g. the next
exciton band).

Topologies and drive slots (upper state listed first):

=============== =====================================================
lambda          a-b (omega1), a-c (omega2)
double_lambda   a-c (omega1), a-b (omega2), ap-b (omega3), ap-c (omega4)
n               a-b (omega1), a-c (omega2), ap-c (omega3)
ladder_lambda   a-b (omega1), ap-a (omega2), ap-c (omega3)
=============== =====================================================

In the double-lambda scheme ``omega1``/``omega2`` form the Raman pair that
prepares the b-c coherence, ``omega3`` probes the upper optical transition
and ``omega4`` labels the low-frequency transition on which radiation is
generated; the slot order makes the carrier closure read
``nu4 = nu1 - nu2 + nu3``.

Level orderings for the four-level schemes are a canonical choice of this
package, not a measured structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .constants import ev_to_angular
from .errors import SchemeError
from .pulses import PulseEnvelope


class SchemeKind(str, Enum):
    LAMBDA = "lambda"
    DOUBLE_LAMBDA = "double_lambda"
    N = "n"
    LADDER_LAMBDA = "ladder_lambda"


@dataclass(frozen=True)
class Transition:
    upper: str
    lower: str
    slot: str

    @property
    def pair(self) -> tuple[str, str]:
        return (self.upper, self.lower)


# (states, transitions) per kind; transitions are listed in the order used to
# span the rotating frame (a spanning tree walked from the ground state).
_TOPOLOGY: dict[SchemeKind, tuple[tuple[str, ...], tuple[Transition, ...]]] = {
    SchemeKind.LAMBDA: (
        ("a", "b", "c"),
        (Transition("a", "b", "omega1"), Transition("a", "c", "omega2")),
    ),
    SchemeKind.DOUBLE_LAMBDA: (
        ("a", "b", "c", "ap"),
        (
            Transition("a", "c", "omega1"),
            Transition("a", "b", "omega2"),
            Transition("ap", "b", "omega3"),
            Transition("ap", "c", "omega4"),
        ),
    ),
    SchemeKind.N: (
        ("a", "b", "c", "ap"),
        (
            Transition("a", "b", "omega1"),
            Transition("a", "c", "omega2"),
            Transition("ap", "c", "omega3"),
        ),
    ),
    SchemeKind.LADDER_LAMBDA: (
        ("a", "b", "c", "ap"),
        (
            Transition("a", "b", "omega1"),
            Transition("ap", "a", "omega2"),
            Transition("ap", "c", "omega3"),
        ),
    ),
}


@dataclass(frozen=True)
class LevelScheme:
    """Immutable level model: states, bare frequencies and drive topology."""

    kind: SchemeKind
    states: tuple[str, ...]
    transitions: tuple[Transition, ...]
    frequencies: Mapping[str, float]  # rad/s per state, ground at 0
    splitting_ev: float

    @property
    def dim(self) -> int:
        return len(self.states)

    @property
    def slots(self) -> tuple[str, ...]:
        return tuple(t.slot for t in self.transitions)

    def index(self, state: str) -> int:
        try:
            return self.states.index(state)
        except ValueError:
            raise SchemeError(f"unknown state {state!r}; states are {self.states}") from None

    def transition(self, slot: str) -> Transition:
        for t in self.transitions:
            if t.slot == slot:
                return t
        raise SchemeError(f"unknown field slot {slot!r}; slots are {self.slots}")

    def transition_frequency(self, slot: str) -> float:
        """Bare frequency omega_upper - omega_lower of the slot's transition, rad/s."""
        t = self.transition(slot)
        return self.frequencies[t.upper] - self.frequencies[t.lower]


def build_scheme(kind: SchemeKind | str, *, splitting_ev: float = 0.010,
                 optical_gap_ev: float = 1.2, upper_gap_ev: float = 2.0) -> LevelScheme:
    """Construct one of the four canonical schemes.

    ``splitting_ev`` is the bright-dark splitting (default 10 meV, inside the
    several-meV to tens-of-meV range reported for nanotubes), ``optical_gap_ev``
    the bright-exciton energy, and ``upper_gap_ev`` the second excited level
    used by the four-level schemes.
    """
    if isinstance(kind, str):
        try:
            kind = SchemeKind(kind)
        except ValueError:
            known = ", ".join(k.value for k in SchemeKind)
            raise SchemeError(f"unknown scheme kind {kind!r}; expected one of: {known}") from None
    if splitting_ev <= 0:
        raise SchemeError("bright-dark splitting must be > 0")
    if optical_gap_ev <= splitting_ev:
        raise SchemeError("optical gap must exceed the bright-dark splitting")

    states, transitions = _TOPOLOGY[kind]
    freqs: dict[str, float] = {
        "b": 0.0,
        "a": ev_to_angular(optical_gap_ev),
    }
    if kind is SchemeKind.LADDER_LAMBDA:
        freqs["c"] = ev_to_angular(upper_gap_ev - splitting_ev)
    else:
        freqs["c"] = ev_to_angular(optical_gap_ev - splitting_ev)
    if "ap" in states:
        if upper_gap_ev <= optical_gap_ev:
            raise SchemeError("upper gap must exceed the optical gap")
        freqs["ap"] = ev_to_angular(upper_gap_ev)

    return LevelScheme(
        kind=kind,
        states=states,
        transitions=transitions,
        frequencies=MappingProxyType({s: freqs[s] for s in states}),
        splitting_ev=splitting_ev,
    )


@dataclass(frozen=True)
class DriveField:
    """One coherent beam addressing a transition slot.

    ``rabi`` is the full Rabi frequency Omega = d E_peak / hbar in rad/s
    (constant, or a :class:`PulseEnvelope` for shaped drives).  Either the
    detuning or the absolute carrier frequency may be given; the missing one
    is derived from the scheme's bare transition frequency,
    detuning = omega_transition - carrier.  With neither given the field is
    resonant.
    """

    rabi: float | PulseEnvelope = 0.0
    detuning: float | None = None
    phase: float = 0.0
    carrier: float | None = None

    def __post_init__(self):
        if not isinstance(self.rabi, PulseEnvelope) and self.rabi < 0:
            raise SchemeError("constant Rabi magnitude must be >= 0")

    @property
    def is_pulsed(self) -> bool:
        return isinstance(self.rabi, PulseEnvelope)

    @property
    def peak_rabi(self) -> float:
        return self.rabi.peak if self.is_pulsed else float(self.rabi)

    def rabi_at(self, t: float) -> float:
        return self.rabi.value_at(t) if self.is_pulsed else float(self.rabi)


@dataclass(frozen=True)
class ResolvedField:
    """DriveField with both detuning and carrier pinned to a scheme slot."""

    slot: str
    rabi: float | PulseEnvelope
    detuning: float
    phase: float
    carrier: float

    @property
    def is_pulsed(self) -> bool:
        return isinstance(self.rabi, PulseEnvelope)

    @property
    def peak_rabi(self) -> float:
        return self.rabi.peak if self.is_pulsed else float(self.rabi)

    def rabi_at(self, t: float) -> float:
        return self.rabi.value_at(t) if self.is_pulsed else float(self.rabi)


def resolve_fields(scheme: LevelScheme, fields: Mapping[str, DriveField]
                   ) -> dict[str, ResolvedField]:
    """Fill in carrier/detuning for every slot; every slot must be supplied."""
    resolved = {}
    for slot in scheme.slots:
        if slot not in fields:
            raise SchemeError(f"missing field for slot {slot!r} of scheme {scheme.kind.value!r}")
        f = fields[slot]
        omega_t = scheme.transition_frequency(slot)
        if f.detuning is not None and f.carrier is not None:
            implied = omega_t - f.carrier
            if not np.isclose(implied, f.detuning, rtol=1e-9, atol=1e-3):
                raise SchemeError(
                    f"slot {slot!r}: carrier implies detuning {implied:.6e} rad/s "
                    f"but {f.detuning:.6e} rad/s was given")
            detuning = float(f.detuning)
        elif f.carrier is not None:
            detuning = omega_t - f.carrier
        else:
            detuning = float(f.detuning) if f.detuning is not None else 0.0
        resolved[slot] = ResolvedField(
            slot=slot, rabi=f.rabi, detuning=detuning,
            phase=float(f.phase), carrier=omega_t - detuning)
    extra = set(fields) - set(scheme.slots)
    if extra:
        raise SchemeError(f"fields given for unknown slots {sorted(extra)}; slots are {scheme.slots}")
    return resolved
