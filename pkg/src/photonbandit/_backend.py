"""Pick the episode backend at import time.

The compiled kernel is used when importable.  ``PHOTONBANDIT_BACKEND=python``
forces the pure-Python runner; both produce identical numbers.
"""
from __future__ import annotations

import os

from . import _fallback

try:
    from . import _kernel
except ImportError:  # extension not built
    _kernel = None

BACKENDS = {"python": _fallback}
if _kernel is not None:
    BACKENDS["cython"] = _kernel

_requested = os.environ.get("PHOTONBANDIT_BACKEND", "").strip().lower()
if _requested and _requested not in ("python", "cython"):
    raise ImportError(f"PHOTONBANDIT_BACKEND must be 'python' or 'cython', got {_requested!r}")
if _requested == "cython" and _kernel is None:
    raise ImportError("PHOTONBANDIT_BACKEND=cython but photonbandit._kernel is not built")

BACKEND = _requested or ("cython" if _kernel is not None else "python")


def get(name: str | None = None):
    """Module exposing ``run_episodes(config, seeds)`` for ``name`` (default: active)."""
    return BACKENDS[name or BACKEND]
