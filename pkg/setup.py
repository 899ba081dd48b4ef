"""Build script.  The compiled quadrature kernel is optional: if Cython or a
C compiler is unavailable the package installs pure-Python and selects the
numpy backend at import time."""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/pairforce/kernels/_fastkern.pyx",
        compiler_directives={"language_level": "3"},
    )
    include_dirs = [numpy.get_include()]
except ImportError:
    include_dirs = []

setup(
    ext_modules=ext_modules,
    include_dirs=include_dirs,
)
