"""Build helper: compiles the optional kernel extension when Cython is present.

The package is fully functional without the extension; qtchar.kernels falls
back to the pure-Python implementation at import time.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("QTCHAR_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/qtchar/_kernels.pyx"], language_level=3, annotate=False
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
