"""Build script for the optional compiled enumeration kernels.

The package works without the extension: idealstats.kernels falls back to
the pure-Python implementation when the compiled module is missing.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "idealstats._kernels_cy",
                ["src/idealstats/_kernels_cy.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
