"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure numpy fallback is selected at
import time), so a failed/missing Cython build is not fatal for development
checkouts; `pip install -e . --no-build-isolation` builds it.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "stretchcount._kernels",
                ["src/stretchcount/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
