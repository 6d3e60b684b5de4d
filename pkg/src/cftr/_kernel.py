"""Select the compiled walk kernel when available, else the pure-Python one."""

from __future__ import annotations

import os
from array import array

from . import _walk_py

try:
    if os.environ.get("CFTR_PURE_PYTHON"):
        raise ImportError
    from . import _walk as _compiled  # type: ignore[attr-defined]
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
_scan = (_compiled or _walk_py).orbit_scan


def orbit_scan(tables, base: int, start: int, word: array, iters: int, impl=None):
    """Records (depth, final, type, min depth) after each completed iteration of word."""
    fn = _scan if impl is None else impl.orbit_scan
    n = max(iters, 1)
    out = [array("i", [0]) * n for _ in range(4)]
    done, exited = fn(tables.L, tables.maxF, tables.voff, tables.soff, tables.slot_child,
                      tables.kind, tables.mx, tables.my, tables.up,
                      base, start, word, iters, *out)
    return done, exited, out


def backends():
    """All importable kernel modules keyed by name."""
    found = {"python": _walk_py}
    if _compiled is not None:
        found["cython"] = _compiled
    return found
