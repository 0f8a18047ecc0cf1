"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the pure-Python
module takes over.  Setting ``TSUBDIV_PURE=1`` forces the fallback.
"""
from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels


def _load() -> tuple[ModuleType, str]:
    if os.environ.get("TSUBDIV_PURE", "") not in ("", "0"):
        return _pykernels, "python"
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        return _pykernels, "python"
    return _kernels, "cython"


backend, BACKEND = _load()

directed_counts = backend.directed_counts
find_subdivision_small = backend.find_subdivision_small
sweep_small = backend.sweep_small

PRESENT = _pykernels.PRESENT
ABSENT = _pykernels.ABSENT
INCONCLUSIVE = _pykernels.INCONCLUSIVE
SWEEP_DONE = _pykernels.SWEEP_DONE
SWEEP_FOUND_ABSENT = _pykernels.SWEEP_FOUND_ABSENT
SWEEP_BUDGET = _pykernels.SWEEP_BUDGET
