"""Kernel dispatch: compiled extension when importable, else pure Python.

Set ``SQTRI_PURE_PYTHON=1`` to force the fallback. Arguments outside the
native 64-bit range are always routed to the fallback.
"""

import os

from sqtri import _kernels_py

_native = None
if not os.environ.get("SQTRI_PURE_PYTHON"):
    try:
        from sqtri import _kernels as _native
    except ImportError:
        _native = None

BACKEND = "cython" if _native is not None else "python"


def scan_triangular_squares(start, stop):
    if _native is not None and 0 <= start and stop <= _native.SCAN_MAX:
        return _native.scan_triangular_squares(start, stop)
    return _kernels_py.scan_triangular_squares(start, stop)


def merge_polygonal(sides1, sides2, limit):
    if (
        _native is not None
        and limit <= _native.MERGE_MAX
        and max(sides1, sides2) <= _native.SIDES_MAX
    ):
        return _native.merge_polygonal(sides1, sides2, limit)
    return _kernels_py.merge_polygonal(sides1, sides2, limit)
