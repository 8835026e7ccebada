"""Build script: compiles the optional Cython stepping kernel.

The package works without the extension (a NumPy fallback is selected at
import time), so a failed native build only costs speed.
"""

import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, etc.
            warnings.warn(f"compiled core skipped, using NumPy fallback: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"compiled core skipped, using NumPy fallback: {exc}")


ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/darkbright/_core.pyx"],
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "language_level": 3,
        },
    )
except Exception as exc:
    warnings.warn(f"Cython unavailable, building pure-Python package: {exc}")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
