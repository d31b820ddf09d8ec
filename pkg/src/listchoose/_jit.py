"""JIT switch for the numeric kernels.

Set ``LISTCHOOSE_DISABLE_JIT=1`` to run every kernel as plain Python on numpy
arrays. The flag is read once, at import time.
"""

from __future__ import annotations

import os

_FLAG = os.environ.get("LISTCHOOSE_DISABLE_JIT", "").strip().lower()
JIT_REQUESTED = _FLAG not in ("1", "true", "yes", "on")

try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    _numba = None

JIT_ENABLED = JIT_REQUESTED and _numba is not None


def njit(func):
    """Compile ``func`` with numba in nopython/nogil mode when enabled."""
    if JIT_ENABLED:
        return _numba.njit(cache=True, nogil=True)(func)
    return func
