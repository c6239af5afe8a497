"""Build hook for the optional compiled row-reduction kernel.

The package is pure Python except for ncfourier._accel._rrefc, a Cython
twin of ncfourier._accel._rrefpy.  If Cython or a C compiler is missing
the extension is skipped and the package falls back to the Python
implementation at import time.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "ncfourier._accel._rrefc",
                ["src/ncfourier/_accel/_rrefc.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
