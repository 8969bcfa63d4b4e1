"""Numba switch.

Set ``SIGMADECAY_NUMBA=0`` in the environment to force the pure-numpy code
paths; anything else (or unset) uses numba when it can be imported.
"""
import os

_flag = os.environ.get("SIGMADECAY_NUMBA", "1").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    numba = None

USE_NUMBA = numba is not None and _flag not in ("0", "false", "no", "off")


def njit(fn):
    """Compile ``fn`` in nopython mode, or return it untouched when numba is off."""
    if numba is None:
        return fn
    return numba.njit(cache=True)(fn)
