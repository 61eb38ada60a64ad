"""Build script.

The compiled scan kernel is optional: if Cython or a C compiler is
unavailable the package installs pure-Python and selects the fallback
backend at import time.
"""
import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the extension if possible, otherwise warn and continue."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(f"WARNING: compiled kernel unavailable ({exc}); "
              "falling back to the pure-Python backend")


extensions = []
if not os.environ.get("SEMIFORMS_PURE"):
    try:
        from Cython.Build import cythonize

        extensions = cythonize(
            [
                Extension(
                    "semiforms._kernels",
                    ["src/semiforms/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "language_level": 3,
            },
        )
    except ImportError:
        print("WARNING: Cython not installed; building pure-Python only")

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
