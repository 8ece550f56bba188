"""Backend selection for the float-lane batch kernels.

FRAMESCALE_JIT=0/off/false/no forces the pure-numpy lane; 1/on/true/yes or
require demands the jitted lane and raises if numba cannot be imported;
unset (or auto) tries numba first and falls back to numpy silently.
Both lanes implement the same two functions with identical semantics.
"""

from __future__ import annotations

import os

_FORCE_OFF = ("0", "off", "false", "no")
_FORCE_ON = ("1", "on", "true", "yes", "require")

_cached = None


def get_backend():
    global _cached
    if _cached is None:
        _cached = _load()
    return _cached


def backend_name() -> str:
    return get_backend().BACKEND


def _load():
    pref = os.environ.get("FRAMESCALE_JIT", "auto").strip().lower() or "auto"
    if pref in _FORCE_OFF:
        from . import _kernels_numpy as mod
        return mod
    try:
        from . import _kernels_numba as mod
        return mod
    except Exception:
        if pref in _FORCE_ON:
            raise
        from . import _kernels_numpy as mod
        return mod
