"""Build script for the optional compiled kernel extension.

The package is fully functional without the extension (a numpy fallback is
selected at import time); the extension just makes the hot loops fast.
Set RANKTRACE_PURE_PYTHON=1 at build time to skip compiling it.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("RANKTRACE_PURE_PYTHON") != "1":
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "ranktrace._kernels._core",
                    ["src/ranktrace/_kernels/_core.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
