import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("LOGDERIV_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "logderiv._kernels._modred",
                    ["src/logderiv/_kernels/_modred.pyx"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        # no Cython: install fine, the package selects the fallback kernel at import
        ext_modules = []

setup(ext_modules=ext_modules)
