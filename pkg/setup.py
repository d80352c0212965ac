"""Build script: compiles the optional fast kernels when Cython is available.

The package is fully functional without the extension; gentop.kernels falls
back to the pure-Python implementation at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "gentop.kernels._speed",
                ["src/gentop/kernels/_speed.pyx"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
