#!/usr/bin/env python3
"""Benchmark: compiled stepping kernel vs the NumPy fallback.

Times the two kernels on the workloads that dominate real scans: a CW
relaxation transient and a pulsed STIRAP sweep, both on the lambda scheme.
Run as ``python benchmarks/bench_core.py [--repeat N]``.
"""

import argparse
import time

import numpy as np

from darkbright import (DriveField, LindbladGenerator, PulseEnvelope,
                        assemble_liouvillian, build_dissipator,
                        build_hamiltonian, build_scheme, compiled_available,
                        paper_rate_set, pure_density, vec)
from darkbright import backend


def cw_problem():
    scheme = build_scheme("lambda")
    rates = paper_rate_set(scheme, gamma_cb=1e9, dark_decay=1e9)
    fields = {"omega1": DriveField(rabi=2e11), "omega2": DriveField(rabi=2e11)}
    L = assemble_liouvillian(build_hamiltonian(scheme, fields),
                             build_dissipator(scheme, rates))
    gen = LindbladGenerator.constant(L)
    y0 = vec(pure_density(scheme, "b"))
    return gen, y0, 2e-9


def stirap_problem():
    scheme = build_scheme("lambda")
    rates = paper_rate_set(scheme, gamma_optical=1e11, bright_decay=1e11)
    fwhm = 10e-12
    fields = {
        "omega1": DriveField(rabi=PulseEnvelope.gaussian(2e13, +3e-12, fwhm)),
        "omega2": DriveField(rabi=PulseEnvelope.gaussian(2e13, -3e-12, fwhm)),
    }
    gen = LindbladGenerator.from_model(scheme, fields, rates)
    y0 = vec(pure_density(scheme, "b"))
    return gen, y0, 6.0 * fwhm


def run(gen, y0, span, name, repeat):
    mats, kinds, params, samples = gen.backend_arrays()
    results = {}
    for which in ("python", "compiled"):
        if which == "compiled" and not compiled_available():
            continue
        best = np.inf
        for _ in range(repeat):
            t0 = time.perf_counter()
            _, _, acc, rej = backend.propagate(mats, kinds, params, samples,
                                               y0, -span / 2, span / 2,
                                               1e-9, 1e-13, backend=which)
            best = min(best, time.perf_counter() - t0)
        results[which] = (best, acc + rej)
    py_t, steps = results["python"]
    line = f"{name:22s} {steps:6d} steps | python {py_t * 1e3:8.2f} ms"
    if "compiled" in results:
        c_t, _ = results["compiled"]
        line += f" | compiled {c_t * 1e3:8.2f} ms | speedup {py_t / c_t:6.1f}x"
    print(line)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if not compiled_available():
        print("compiled core not available; timing the NumPy kernel only")
    run(*cw_problem(), "cw relaxation", args.repeat)
    run(*stirap_problem(), "stirap pulse pair", args.repeat)


if __name__ == "__main__":
    main()
