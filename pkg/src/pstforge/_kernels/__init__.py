"""Kernel backend selection.

The compiled Cython extension is used when it was built; otherwise the
pure-Python implementation takes over transparently.  Set the environment
variable PSTFORGE_PURE_PYTHON=1 to force the fallback (the benchmark and
the test suite use this to exercise both paths).
"""

import os

from . import pykernel

if os.environ.get("PSTFORGE_PURE_PYTHON", "") not in ("", "0"):
    impl = pykernel
    BACKEND = "python"
else:
    try:
        from . import cykernel as impl

        BACKEND = "cython"
    except ImportError:
        impl = pykernel
        BACKEND = "python"

sturm_count = impl.sturm_count
bisect_eigenvalues = impl.bisect_eigenvalues
inverse_iteration = impl.inverse_iteration


def backend_name() -> str:
    return BACKEND
