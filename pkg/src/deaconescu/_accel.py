"""Numba dispatch.

Kernels in :mod:`deaconescu.kernels` come in pairs: a compiled loop and a
pure-numpy equivalent.  Set ``DEACONESCU_DISABLE_NUMBA=1`` to force the numpy
path (useful for debugging and for the benchmark comparison).
"""
from __future__ import annotations

import os

_FLAG = "DEACONESCU_DISABLE_NUMBA"


def numba_disabled() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


try:
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False
    _njit = None


def njit(*args, **kwargs):
    """``numba.njit`` when available, identity decorator otherwise."""
    if not HAVE_NUMBA:
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f
    kwargs.setdefault("cache", True)
    return _njit(*args, **kwargs)


def use_numba() -> bool:
    return HAVE_NUMBA and not numba_disabled()
