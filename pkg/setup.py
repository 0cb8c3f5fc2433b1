"""Builds the optional Cython enumeration kernel.

If Cython or a C compiler is missing the package installs without it and
falls back to the pure-Python kernel at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
except ImportError:
    pass
else:
    ext_modules = cythonize(
        ["src/arakelov_h0/_fpenum.pyx"],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
