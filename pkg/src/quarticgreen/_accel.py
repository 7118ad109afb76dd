"""Backend switch for the hot lattice kernels.

Set ``QUARTICGREEN_DISABLE_NUMBA=1`` to force the pure-numpy path.
"""
import os

DISABLED = os.environ.get("QUARTICGREEN_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not DISABLED


def maybe_njit(func):
    """numba.njit(cache=True) when available, else the function itself."""
    if HAVE_NUMBA:
        return numba.njit(cache=True)(func)
    return func


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
