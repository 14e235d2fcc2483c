import sys

from setuptools import Extension, setup

# The compiled kernel is an optional accelerator; the package falls back to
# the pure-Python implementation in pstforge._kernels.pykernel when the
# extension is absent.
ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "pstforge._kernels.cykernel",
                ["src/pstforge/_kernels/cykernel.pyx"],
            )
        ],
        language_level=3,
    )
except ImportError:
    print("Cython not available, building without compiled kernels", file=sys.stderr)

setup(ext_modules=ext_modules)
