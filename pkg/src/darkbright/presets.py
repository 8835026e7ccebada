"""Numeric presets for nanotube exciton simulations.

The default rate bundle uses the parameter ranges reported for single-walled
nanotubes: optical (bright) coherences relax at ~1e12 /s, the ground/dark
coherence lives between 30 ns and 1 us, and transition dipole moments are a
few e*Angstrom.  The slow pair is always (b, c); every other pair relaxes at
the optical rate.
"""

from __future__ import annotations

from itertools import combinations

from .dissipation import DecayChannel, RateSet
from .schemes import LevelScheme, SchemeKind

GAMMA_OPTICAL_DEFAULT = 1e12    # 1/s
GAMMA_CB_DEFAULT = 1e6          # 1/s, 1 us dark coherence
GAMMA_CB_FAST = 1.0 / 30e-9     # 1/s, 30 ns endpoint
DIPOLE_DEFAULT = 6.0            # e*Angstrom

# Population decay channels per scheme kind: (source, target, scale) where
# scale "bright" uses the bright decay rate and "dark" the slow rate.
_DECAY_PLAN = {
    SchemeKind.LAMBDA: (("a", "b", "bright"), ("c", "b", "dark")),
    SchemeKind.DOUBLE_LAMBDA: (("a", "b", "bright"), ("ap", "b", "bright"),
                               ("c", "b", "dark")),
    SchemeKind.N: (("a", "b", "bright"), ("ap", "c", "bright"),
                   ("c", "b", "dark")),
    SchemeKind.LADDER_LAMBDA: (("a", "b", "bright"), ("ap", "a", "bright"),
                               ("c", "b", "dark")),
}


def paper_rate_set(scheme: LevelScheme, *, gamma_cb: float = GAMMA_CB_DEFAULT,
                   gamma_optical: float = GAMMA_OPTICAL_DEFAULT,
                   bright_decay: float = GAMMA_OPTICAL_DEFAULT,
                   dark_decay: float | None = None,
                   dipole_e_angstrom: float = DIPOLE_DEFAULT) -> RateSet:
    """Default relaxation constants for a scheme.

    Every state pair gets an explicit coherence rate: ``gamma_cb`` on the
    long-lived (b, c) pair, ``gamma_optical`` elsewhere.  Population decay
    follows the scheme's natural cascade; the dark population decay defaults
    to ``gamma_cb`` (coherence-lifetime-limited), keeping the set realizable.
    """
    if gamma_cb > gamma_optical:
        raise ValueError("the (b, c) coherence must be the long-lived one")
    if dark_decay is None:
        dark_decay = gamma_cb
    coherences = {}
    for i, j in combinations(scheme.states, 2):
        pair = tuple(sorted((i, j)))
        coherences[pair] = gamma_cb if pair == ("b", "c") else gamma_optical
    scale = {"bright": bright_decay, "dark": dark_decay}
    decays = tuple(DecayChannel(src, tgt, scale[which])
                   for src, tgt, which in _DECAY_PLAN[scheme.kind])
    return RateSet(coherence_rates=coherences, decays=decays,
                   dipole_e_angstrom=dipole_e_angstrom)
