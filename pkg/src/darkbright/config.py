"""Run-configuration files: INI-style sections with mandatory units.

Grammar (documented in the README): ``[section]`` headers, ``key = value``
entries, ``#``/``;`` comments.  Dimensioned values must carry a unit token
("10 meV", "1e12 /s", "1 us"); dimensionless values must not.  Unknown
sections or keys are errors, not warnings, and every diagnostic names the
line it came from.  Rates may equivalently be given as lifetimes
(``lifetime_cb = 1 us`` instead of ``gamma_cb = 1e6 /s``); giving both for
one quantity is an error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import numpy as np

from .constants import ev_to_angular
from .dissipation import DecayChannel, RateSet
from .errors import ConfigError
from .presets import paper_rate_set
from .scenarios import ScenarioSpec, SweepSpec, Tolerances
from .schemes import DriveField, LevelScheme, SchemeKind, build_scheme

# Unit token -> (dimension, factor to internal value).  Energies convert to
# rad/s, times to seconds, rates to 1/s, densities to 1/cm^3.
_UNITS: dict[str, tuple[str, float]] = {
    "eV": ("energy", 1.0),
    "meV": ("energy", 1e-3),
    "rad/s": ("angular", 1.0),
    "/s": ("rate", 1.0),
    "1/s": ("rate", 1.0),
    "s": ("time", 1.0),
    "ms": ("time", 1e-3),
    "us": ("time", 1e-6),
    "ns": ("time", 1e-9),
    "ps": ("time", 1e-12),
    "fs": ("time", 1e-15),
    "rad": ("plane_angle", 1.0),
    "W/cm2": ("intensity", 1.0),
    "W/cm^2": ("intensity", 1.0),
    "eA": ("dipole", 1.0),
    "/cm3": ("density", 1.0),
    "/cm^3": ("density", 1.0),
    "/m3": ("density", 1e-6),
}

_STATES = ("a", "b", "c", "ap")
_SLOTS = ("omega1", "omega2", "omega3", "omega4")

# key -> accepted dimension(s); "none" means dimensionless (bare number) and
# "token" means a bare word.
_SCHEMA: dict[str, dict[str, tuple[str, ...]]] = {
    "scheme": {
        "kind": ("token",),
        "splitting": ("energy", "angular"),
        "optical_gap": ("energy", "angular"),
        "upper_gap": ("energy", "angular"),
    },
    "rates": {
        **{f"gamma_{i}{j}": ("rate",) for i in _STATES for j in _STATES if i != j},
        **{f"lifetime_{i}{j}": ("time",) for i in _STATES for j in _STATES if i != j},
        **{f"decay_{i}_{j}": ("rate",) for i in _STATES for j in _STATES if i != j},
        "dipole": ("dipole",),
    },
    "fields": {
        **{f"{s}_rabi": ("angular",) for s in _SLOTS},
        **{f"{s}_detuning": ("angular",) for s in _SLOTS},
        **{f"{s}_phase": ("plane_angle",) for s in _SLOTS},
    },
    "sweep": {
        "parameter": ("token",),
        "start": ("angular", "rate", "time", "none"),
        "stop": ("angular", "rate", "time", "none"),
        "points": ("none",),
        "scale": ("token",),
    },
    "evolve": {
        "t_final": ("time",),
        "points": ("none",),
        "initial": ("token",),
    },
    "output": {
        "path": ("token",),
        "format": ("token",),
    },
    "tolerances": {
        "rtol": ("none",),
        "atol": ("none",),
        "steady_null_tol": ("none",),
        "steady_residual_tol": ("none",),
    },
    "scenario": {
        "margin": ("none",),
        "prep_margin": ("none",),
        "probe_fraction": ("none",),
        "density": ("density",),
        "gamma_cb": ("rate",),
        "gamma_optical": ("rate",),
        "bright_decay": ("rate",),
        "dark_decay": ("rate",),
        "dipole": ("dipole",),
        "pulse_fwhm": ("time",),
        "pulse_peak": ("angular",),
        "delay_half_span_fwhm": ("none",),
        "scan_points": ("none",),
        "scan_half_width": ("angular",),
        "inner_points": ("none",),
        "outer_points": ("none",),
        "omega3_rabi": ("angular",),
        "omega3_max": ("angular",),
        "gamma_ab": ("rate",),
        "workers": ("none",),
    },
}

_TOKEN_KEYS = {("scheme", "kind"), ("sweep", "parameter"), ("sweep", "scale"),
               ("output", "path"), ("output", "format"), ("evolve", "initial")}


@dataclass(frozen=True)
class ConfigValue:
    value: float | str
    unit: str
    line: int


@dataclass
class RunConfig:
    """Parsed, validated configuration with defaults recorded."""

    sections: dict[str, dict[str, ConfigValue]] = field(default_factory=dict)
    defaults_applied: dict[str, dict[str, str]] = field(default_factory=dict)

    def get(self, section: str, key: str, default=None):
        entry = self.sections.get(section, {}).get(key)
        return default if entry is None else entry.value

    def has(self, section: str, key: str) -> bool:
        return key in self.sections.get(section, {})

    def section(self, name: str) -> dict[str, ConfigValue]:
        return self.sections.get(name, {})


def _parse_value(section: str, key: str, raw: str, line_no: int) -> ConfigValue:
    allowed = _SCHEMA[section][key]
    parts = raw.split()
    if (section, key) in _TOKEN_KEYS:
        if len(parts) != 1:
            raise ConfigError(f"line {line_no}: key '{key}' takes a single word, got {raw!r}")
        return ConfigValue(parts[0], "", line_no)
    if len(parts) == 1:
        if "none" not in allowed:
            raise ConfigError(
                f"line {line_no}: missing unit on '{key}' in [{section}]; "
                f"expected a unit of dimension {' or '.join(allowed)}")
        number, unit = parts[0], ""
    elif len(parts) == 2:
        number, unit = parts
        if unit not in _UNITS:
            raise ConfigError(f"line {line_no}: unknown unit {unit!r} on '{key}' in [{section}]")
        dim = _UNITS[unit][0]
        if dim not in allowed:
            raise ConfigError(
                f"line {line_no}: unit {unit!r} has dimension '{dim}' but '{key}' "
                f"in [{section}] expects {' or '.join(allowed)}")
    else:
        raise ConfigError(f"line {line_no}: malformed value {raw!r} for '{key}'")
    try:
        value = float(number)
    except ValueError:
        raise ConfigError(f"line {line_no}: malformed number {number!r} for '{key}' "
                          f"in [{section}]") from None
    if unit:
        dim, factor = _UNITS[unit]
        value *= factor
        if dim == "energy":
            value = ev_to_angular(value)
        if key.startswith("lifetime_"):
            if value <= 0:
                raise ConfigError(f"line {line_no}: lifetime must be > 0")
            value = 1.0 / value
    return ConfigValue(value, unit, line_no)


def parse_config(text: str) -> RunConfig:
    """Parse configuration text; every error carries its line number."""
    cfg = RunConfig()
    section: str | None = None
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#") or line.startswith(";"):
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in _SCHEMA:
                raise ConfigError(f"line {line_no}: unknown section '[{section}]'; "
                                  f"known sections: {sorted(_SCHEMA)}")
            cfg.sections.setdefault(section, {})
            continue
        if "=" not in line:
            raise ConfigError(f"line {line_no}: expected 'key = value', got {raw_line!r}")
        if section is None:
            raise ConfigError(f"line {line_no}: entry outside any [section]")
        key, _, raw = line.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key not in _SCHEMA[section]:
            raise ConfigError(f"unknown key '{key}' in [{section}] (line {line_no})")
        if key in cfg.sections[section]:
            raise ConfigError(f"line {line_no}: duplicate key '{key}' in [{section}]")
        cfg.sections[section][key] = _parse_value(section, key, raw, line_no)

    _check_rate_lifetime_conflicts(cfg)
    _apply_defaults(cfg)
    return cfg


def _check_rate_lifetime_conflicts(cfg: RunConfig) -> None:
    rates = cfg.sections.get("rates", {})
    for key in list(rates):
        if key.startswith("lifetime_"):
            twin = "gamma_" + key[len("lifetime_"):]
            if twin in rates:
                raise ConfigError(f"[rates] gives both '{twin}' and '{key}'; "
                                  "specify each relaxation once, as a rate or a lifetime")


def _apply_defaults(cfg: RunConfig) -> None:
    scheme_defaults = {"kind": "lambda",
                       "splitting": ev_to_angular(0.010),
                       "optical_gap": ev_to_angular(1.2),
                       "upper_gap": ev_to_angular(2.0)}
    for key, value in scheme_defaults.items():
        if not cfg.has("scheme", key):
            cfg.sections.setdefault("scheme", {})[key] = ConfigValue(value, "", 0)
            cfg.defaults_applied.setdefault("scheme", {})[key] = "preset"
    if not cfg.has("output", "format"):
        cfg.sections.setdefault("output", {})["format"] = ConfigValue("csv", "", 0)
        cfg.defaults_applied.setdefault("output", {})["format"] = "preset"
    tol_defaults = {"rtol": 1e-9, "atol": 1e-13, "steady_null_tol": 1e-10,
                    "steady_residual_tol": 1e-9}
    for key, value in tol_defaults.items():
        if not cfg.has("tolerances", key):
            cfg.sections.setdefault("tolerances", {})[key] = ConfigValue(value, "", 0)
            cfg.defaults_applied.setdefault("tolerances", {})[key] = "preset"


def serialize_config(cfg: RunConfig) -> str:
    """Canonical text form; parsing it back reproduces the same resolved config."""
    lines = []
    for section in sorted(cfg.sections):
        entries = cfg.sections[section]
        if not entries:
            continue
        lines.append(f"[{section}]")
        for key in sorted(entries):
            v = entries[key]
            if isinstance(v.value, str):
                lines.append(f"{key} = {v.value}")
            else:
                # Values are stored in internal units; emit them unit-tagged so
                # the round trip is exact.
                unit = {"rates": "/s", "fields": "rad/s"}.get(section, "")
                if section == "scheme" and key != "kind":
                    unit = "rad/s"
                if section == "rates" and key == "dipole":
                    unit = "eA"
                if section == "scenario":
                    unit = _scenario_unit(key)
                if section == "evolve" and key == "t_final":
                    unit = "s"
                if section == "rates" and key.startswith("lifetime_"):
                    key = "gamma_" + key[len("lifetime_"):]
                    unit = "/s"
                if section == "fields" and key.endswith("_phase"):
                    unit = "rad"
                value = repr(float(v.value))
                lines.append(f"{key} = {value} {unit}".rstrip())
        lines.append("")
    return "\n".join(lines)


def _scenario_unit(key: str) -> str:
    units = {"density": "/cm3", "gamma_cb": "/s", "gamma_optical": "/s",
             "bright_decay": "/s", "dark_decay": "/s", "gamma_ab": "/s",
             "dipole": "eA", "pulse_fwhm": "s", "pulse_peak": "rad/s",
             "scan_half_width": "rad/s", "omega3_rabi": "rad/s",
             "omega3_max": "rad/s"}
    return units.get(key, "")


def build_model(cfg: RunConfig) -> tuple[LevelScheme, dict[str, DriveField], RateSet]:
    """Materialize (scheme, fields, rates) from a parsed configuration."""
    from .constants import angular_to_ev

    kind = cfg.get("scheme", "kind")
    try:
        scheme_kind = SchemeKind(kind)
    except ValueError:
        raise ConfigError(f"[scheme] kind must be one of "
                          f"{[k.value for k in SchemeKind]}, got {kind!r}") from None
    scheme = build_scheme(scheme_kind,
                          splitting_ev=angular_to_ev(cfg.get("scheme", "splitting")),
                          optical_gap_ev=angular_to_ev(cfg.get("scheme", "optical_gap")),
                          upper_gap_ev=angular_to_ev(cfg.get("scheme", "upper_gap")))

    rates_sec = cfg.section("rates")
    base = paper_rate_set(scheme)
    coherences = dict(base.coherence_rates)
    decays = {(c.source, c.target): c.rate for c in base.decays}
    dipole = base.dipole_e_angstrom
    for key, entry in rates_sec.items():
        if key == "dipole":
            dipole = float(entry.value)
        elif key.startswith(("gamma_", "lifetime_")):
            pair_txt = key.split("_", 1)[1]
            coherences[_parse_pair(pair_txt, scheme)] = float(entry.value)
        elif key.startswith("decay_"):
            _, src, tgt = key.split("_")
            for st in (src, tgt):
                if st not in scheme.states:
                    raise ConfigError(f"[rates] {key}: state {st!r} is not in the "
                                      f"{scheme.kind.value} scheme")
            decays[(src, tgt)] = float(entry.value)
    rates = RateSet(coherence_rates=coherences,
                    decays=tuple(DecayChannel(s, t, r) for (s, t), r in sorted(decays.items())),
                    dipole_e_angstrom=dipole)

    fields_sec = cfg.section("fields")
    parts: dict[str, dict[str, float]] = {}
    for key, entry in fields_sec.items():
        slot, _, attr = key.partition("_")
        parts.setdefault(slot, {})[attr] = float(entry.value)
    fields = {}
    for slot in scheme.slots:
        p = parts.pop(slot, {})
        fields[slot] = DriveField(rabi=p.get("rabi", 0.0),
                                  detuning=p.get("detuning", 0.0),
                                  phase=p.get("phase", 0.0))
    if parts:
        raise ConfigError(f"[fields] references slots {sorted(parts)} that the "
                          f"{scheme.kind.value} scheme does not have")
    return scheme, fields, rates


def _parse_pair(pair_txt: str, scheme: LevelScheme) -> tuple[str, str]:
    # Two-state tag like "ab", "ca", "apb", "apc", "apa".
    for split in range(1, len(pair_txt)):
        i, j = pair_txt[:split], pair_txt[split:]
        if i in scheme.states and j in scheme.states and i != j:
            return tuple(sorted((i, j)))
    raise ConfigError(f"cannot read state pair from '{pair_txt}' for the "
                      f"{scheme.kind.value} scheme (states {scheme.states})")


def scenario_spec_from_config(name: str, cfg: RunConfig) -> ScenarioSpec:
    """Scenario spec carrying the [scenario], [sweep] and [tolerances] blocks."""
    overrides = {}
    rename = {"density": "density_cm3", "dipole": "dipole_e_angstrom"}
    workers = 1
    for key, entry in cfg.section("scenario").items():
        if key == "workers":
            workers = int(entry.value)
            continue
        overrides[rename.get(key, key)] = float(entry.value)

    sweep = None
    sweep_sec = cfg.section("sweep")
    if sweep_sec:
        for needed in ("parameter", "start", "stop", "points"):
            if needed not in sweep_sec:
                raise ConfigError(f"[sweep] needs '{needed}'")
        scale = cfg.get("sweep", "scale", "linear")
        if scale not in ("linear", "log"):
            raise ConfigError(f"[sweep] scale must be 'linear' or 'log', got {scale!r}")
        start = float(cfg.get("sweep", "start"))
        stop = float(cfg.get("sweep", "stop"))
        points = int(cfg.get("sweep", "points"))
        if points < 1:
            raise ConfigError("[sweep] points must be >= 1")
        if scale == "log":
            if start <= 0 or stop <= 0:
                raise ConfigError("[sweep] log scale needs positive endpoints")
            grid = np.geomspace(start, stop, points)
        else:
            grid = np.linspace(start, stop, points)
        sweep = SweepSpec(str(cfg.get("sweep", "parameter")), grid)

    tol = Tolerances(
        steady_null_tol=float(cfg.get("tolerances", "steady_null_tol")),
        steady_residual_tol=float(cfg.get("tolerances", "steady_residual_tol")),
        rtol=float(cfg.get("tolerances", "rtol")),
        atol=float(cfg.get("tolerances", "atol")))
    return ScenarioSpec(name=name, overrides=overrides, sweep=sweep,
                        tolerances=tol, workers=workers)
