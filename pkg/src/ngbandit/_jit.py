"""JIT selection.

Kernels are written once and compiled with numba unless ``NGBANDIT_DISABLE_JIT``
is set to a truthy value (or numba is not importable), in which case the very
same functions run as ordinary Python over numpy arrays.
"""

import os

_FALSY = {"", "0", "false", "no", "off"}

DISABLED = os.environ.get("NGBANDIT_DISABLE_JIT", "").strip().lower() not in _FALSY

try:
    if DISABLED:
        raise ImportError
    import numba

    HAS_NUMBA = True
except ImportError:
    numba = None
    HAS_NUMBA = False


def njit(*args, **kwargs):
    """``numba.njit`` when available and enabled, identity otherwise."""
    if HAS_NUMBA:
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda func: func


def backend() -> str:
    return "numba" if HAS_NUMBA else "python"
