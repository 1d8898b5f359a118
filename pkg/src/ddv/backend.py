"""Kernel backend selection: numba-jitted hot loops with a pure-numpy fallback.

The recurrent sequence kernels in :mod:`ddv.kernels` are written as plain
numpy functions and compiled with ``numba.njit`` when available.  Set
``DDV_NUMBA=0`` in the environment to force the pure-numpy path (useful for
debugging and for the backend benchmark), ``DDV_NUMBA=1`` to require numba.
"""

import os


def _resolve() -> bool:
    flag = os.environ.get("DDV_NUMBA", "").strip().lower()
    if flag in ("0", "false", "off", "no"):
        return False
    if flag in ("1", "true", "on", "yes"):
        import numba  # noqa: F401  fail loudly if explicitly requested

        return True
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


NUMBA_ENABLED = _resolve()


def jit_kernel(fn):
    """Wrap a kernel with ``numba.njit`` on the numba backend, else return it as-is."""
    if NUMBA_ENABLED:
        from numba import njit

        return njit(cache=True, fastmath=False)(fn)
    return fn
