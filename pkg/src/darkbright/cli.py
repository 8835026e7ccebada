"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 physics/solver/config error.  The
default output directory is taken from ``DARKBRIGHT_OUTDIR`` (falling back
to the working directory) when ``--out`` is not given.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .analytics import cpt_threshold
from .config import build_model, parse_config, scenario_spec_from_config
from .conversions import intensity_from_pulse, rabi_from_intensity
from .dissipation import build_dissipator
from .errors import SimulationError
from .evolve import LindbladGenerator, evolve
from .hamiltonian import build_hamiltonian
from .io import write_results
from .liouville import assemble_liouvillian, pure_density, steady_state
from .scenarios import SCENARIOS, ScanTable, ScenarioSpec, run_scenario


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract wants 1
        raise _UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _build_parser() -> _Parser:
    parser = _Parser(prog="darkbright",
                     description="Bright/dark exciton coherence simulations "
                                 "for single-walled carbon nanotubes.")
    parser.add_argument("--quiet", action="store_true",
                        help="suppress progress messages")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p_scen = sub.add_parser("scenario", help="run a packaged scan scenario")
    p_scen.add_argument("name", help="scenario name (see list-scenarios)")
    p_scen.add_argument("--config", help="configuration file")
    p_scen.add_argument("--out", help="output path")
    p_scen.add_argument("--format", choices=("csv", "json"), default="csv")
    p_scen.add_argument("--workers", type=int, default=1)

    p_steady = sub.add_parser("steady", help="steady state of a configured model")
    p_steady.add_argument("--config", required=True)
    p_steady.add_argument("--out")
    p_steady.add_argument("--format", choices=("csv", "json"), default="csv")

    p_evolve = sub.add_parser("evolve", help="time evolution of a configured model")
    p_evolve.add_argument("--config", required=True)
    p_evolve.add_argument("--out")
    p_evolve.add_argument("--format", choices=("csv", "json"), default="csv")

    p_thr = sub.add_parser("threshold", help="coherent-population-trapping threshold")
    p_thr.add_argument("--gamma-cb", type=float, required=True,
                       help="dark-coherence relaxation rate, 1/s")
    p_thr.add_argument("--gamma-ab", type=float, required=True,
                       help="optical-coherence relaxation rate, 1/s")
    p_thr.add_argument("--mode", choices=("paper_fit", "physical"), default="paper_fit")
    p_thr.add_argument("--dipole-ea", type=float, default=6.0,
                       help="transition dipole moment, e*Angstrom")

    p_conv = sub.add_parser("convert", help="unit conversions")
    conv_sub = p_conv.add_subparsers(dest="what", parser_class=_Parser)
    p_int = conv_sub.add_parser("intensity", help="pulse parameters to W/cm^2")
    p_int.add_argument("--pulse-energy-j", type=float, required=True)
    p_int.add_argument("--duration-s", type=float, required=True)
    p_int.add_argument("--area-cm2", type=float, required=True)
    p_rabi = conv_sub.add_parser("rabi", help="beam intensity to Rabi frequency")
    p_rabi.add_argument("--intensity-w-cm2", type=float, required=True)
    p_rabi.add_argument("--mode", choices=("paper_fit", "physical"), default="paper_fit")
    p_rabi.add_argument("--dipole-ea", type=float, default=6.0)

    sub.add_parser("list-scenarios", help="list available scenarios")
    return parser


def _default_out(name: str, fmt: str) -> Path:
    outdir = Path(os.environ.get("DARKBRIGHT_OUTDIR", "."))
    return outdir / f"{name}.{fmt}"


def _load_config(path: str | None):
    if path is None:
        return parse_config("")
    return parse_config(Path(path).read_text(encoding="utf-8"))


def _progress(args, message: str) -> None:
    if not args.quiet:
        print(message, file=sys.stderr)


def _cmd_scenario(args) -> int:
    if args.name not in SCENARIOS:
        raise _UsageError(f"unknown scenario {args.name!r}; "
                          f"available: {', '.join(sorted(SCENARIOS))}")
    cfg = _load_config(args.config)
    spec = scenario_spec_from_config(args.name, cfg)
    if args.workers != 1:
        spec = ScenarioSpec(name=spec.name, overrides=spec.overrides,
                            sweep=spec.sweep, tolerances=spec.tolerances,
                            workers=args.workers)
    _progress(args, f"running scenario '{args.name}'")
    table = run_scenario(spec)
    out = Path(args.out) if args.out else _default_out(args.name, args.format)
    write_results(table, out, args.format)
    _progress(args, f"wrote {table.nrows} rows to {out}")
    return 0


def _observables_table(scheme, rho, prefix_col: tuple[str, float] | None = None) -> ScanTable:
    columns = []
    row = []
    if prefix_col:
        columns.append(prefix_col[0])
        row.append(prefix_col[1])
    for s in scheme.states:
        columns.append(f"population_{s}")
        row.append(rho[scheme.index(s), scheme.index(s)].real)
    for t in scheme.transitions:
        val = rho[scheme.index(t.upper), scheme.index(t.lower)]
        columns.extend([f"re_coherence_{t.upper}{t.lower}", f"im_coherence_{t.upper}{t.lower}"])
        row.extend([val.real, val.imag])
    return columns, row


def _cmd_steady(args) -> int:
    cfg = _load_config(args.config)
    scheme, fields, rates = build_model(cfg)
    h = build_hamiltonian(scheme, fields)
    rho = steady_state(assemble_liouvillian(h, build_dissipator(scheme, rates)),
                       null_tol=float(cfg.get("tolerances", "steady_null_tol")),
                       residual_tol=float(cfg.get("tolerances", "steady_residual_tol")))
    columns, row = _observables_table(scheme, rho)
    table = ScanTable(columns=tuple(columns), units=("1",) * len(columns),
                      data=np.array([row]),
                      provenance={"scenario": "steady", "package_version": "",
                                  "backend": "direct", "parameters": {},
                                  "sweep": {"parameter": "none", "grid": []},
                                  "tolerances": {}})
    if args.out:
        write_results(table, Path(args.out), args.format)
        _progress(args, f"wrote {args.out}")
    else:
        for c, v in zip(columns, row):
            print(f"{c} = {v:.12e}")
    return 0


def _cmd_evolve(args) -> int:
    cfg = _load_config(args.config)
    scheme, fields, rates = build_model(cfg)
    ev = cfg.section("evolve")
    if "t_final" not in ev:
        raise SimulationError("[evolve] t_final is required for the evolve command")
    t_final = float(ev["t_final"].value)
    points = int(ev["points"].value) if "points" in ev else 101
    initial = str(ev["initial"].value) if "initial" in ev else "b"
    generator = LindbladGenerator.from_model(scheme, fields, rates)
    grid = np.linspace(0.0, t_final, points)
    result = evolve(pure_density(scheme, initial), generator, grid,
                    rtol=float(cfg.get("tolerances", "rtol")),
                    atol=float(cfg.get("tolerances", "atol")))
    rows = []
    columns = None
    for t, rho in zip(result.times, result.states):
        cols, row = _observables_table(scheme, rho, prefix_col=("time", t))
        columns = cols
        rows.append(row)
    units = ["s"] + ["1"] * (len(columns) - 1)
    table = ScanTable(columns=tuple(columns), units=tuple(units),
                      data=np.array(rows),
                      provenance={"scenario": "evolve", "package_version": "",
                                  "backend": result.backend, "parameters": {},
                                  "sweep": {"parameter": "time", "grid": list(map(float, grid))},
                                  "tolerances": {}})
    out = Path(args.out) if args.out else _default_out("evolve", args.format)
    write_results(table, out, args.format)
    _progress(args, f"wrote {table.nrows} rows to {out}")
    return 0


def _cmd_threshold(args) -> int:
    res = cpt_threshold(args.gamma_cb, args.gamma_ab, mode=args.mode,
                        dipole_e_angstrom=args.dipole_ea)
    print(f"Omega_th = {res.omega_threshold:.6e} rad/s")
    print(f"P_th = {res.intensity_threshold:.6e} W/cm^2  (mode: {res.mode})")
    return 0


def _cmd_convert(args) -> int:
    if args.what == "intensity":
        value = intensity_from_pulse(args.pulse_energy_j, args.duration_s, args.area_cm2)
        print(f"intensity = {value:.6e} W/cm^2")
    elif args.what == "rabi":
        value = rabi_from_intensity(args.intensity_w_cm2, mode=args.mode,
                                    dipole_e_angstrom=args.dipole_ea)
        print(f"rabi = {value:.6e} rad/s")
    else:
        raise _UsageError("convert needs a subcommand: intensity or rabi")
    return 0


def cli_main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise _UsageError(parser.format_usage())
        if args.command == "scenario":
            return _cmd_scenario(args)
        if args.command == "steady":
            return _cmd_steady(args)
        if args.command == "evolve":
            return _cmd_evolve(args)
        if args.command == "threshold":
            return _cmd_threshold(args)
        if args.command == "convert":
            return _cmd_convert(args)
        if args.command == "list-scenarios":
            for name in sorted(SCENARIOS):
                print(name)
            return 0
        raise _UsageError(f"unknown command {args.command!r}")
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except (SimulationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
