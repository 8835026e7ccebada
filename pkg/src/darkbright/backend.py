"""Backend selection: compiled stepping kernel with NumPy fallback.

The Cython extension ``darkbright._core`` is used when it imported cleanly
and no tabulated envelope is involved; setting ``DARKBRIGHT_FORCE_PYTHON=1``
pins the NumPy kernel (useful for benchmarking and parity tests).
"""

from __future__ import annotations

import os

import numpy as np

from . import _core_py
from .pulses import KIND_SAMPLES

try:  # pragma: no cover - exercised only when the extension is missing
    from . import _core
    _HAVE_COMPILED = True
except ImportError:
    _core = None
    _HAVE_COMPILED = False


def compiled_available() -> bool:
    return _HAVE_COMPILED


def _force_python() -> bool:
    return os.environ.get("DARKBRIGHT_FORCE_PYTHON", "") not in ("", "0")


def active_backend(kinds=None) -> str:
    """Name of the kernel that would run for the given envelope kinds."""
    if _force_python() or not _HAVE_COMPILED:
        return "python"
    if kinds is not None and any(int(k) == KIND_SAMPLES for k in kinds):
        return "python"
    return "compiled"


def propagate(terms, kinds, params, samples, y0, t0, t1, rtol, atol,
              h_start=0.0, max_steps=10_000_000, backend: str | None = None):
    """Dispatch one integration segment to the active kernel."""
    name = backend or active_backend(kinds)
    if name == "compiled":
        return _core.propagate(
            np.ascontiguousarray(terms, dtype=complex),
            np.ascontiguousarray(kinds, dtype=np.int64),
            np.ascontiguousarray(params, dtype=float),
            samples, np.ascontiguousarray(y0, dtype=complex),
            float(t0), float(t1), float(rtol), float(atol),
            float(h_start), int(max_steps))
    return _core_py.propagate(terms, kinds, params, samples, y0, t0, t1,
                              rtol, atol, h_start, max_steps)
