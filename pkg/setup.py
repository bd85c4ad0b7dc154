"""Build script: compiles the optional sweep kernel.

The package is fully functional without the extension; a numpy-based
fallback is selected at import time when the compiled module is absent.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "bluewedge._kernels._speedups",
                ["src/bluewedge/_kernels/_speedups.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython available: install the pure fallback only.
    pass

setup(ext_modules=ext_modules)
