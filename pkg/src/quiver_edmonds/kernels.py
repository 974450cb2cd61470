"""Backend selection for the exact elimination kernels.

The compiled extension is used when it imports and when the Hadamard bound
guarantees that all minors fit in int64; otherwise the pure-Python kernels
run on arbitrary-precision ints.  Set ``QUIVER_EDMONDS_PURE=1`` to force the
fallback.
"""
import math
import os

import numpy as np

from . import _pykernels

try:
    if os.environ.get("QUIVER_EDMONDS_PURE", "") not in ("", "0"):
        raise ImportError("pure-Python backend forced")
    from . import _kernels as _native
except ImportError:
    _native = None

BACKEND = "native" if _native is not None else "python"

_NATIVE_LIMIT = 1 << 62


def hadamard_bound(rows):
    """Upper bound on |minor| for every square submatrix of ``rows``."""
    bound = 1
    for row in rows:
        s = sum(x * x for x in row)
        if s > 1:
            bound *= math.isqrt(s) + 1
    return bound


def fits_native(rows):
    return _native is not None and hadamard_bound(rows) < _NATIVE_LIMIT


def det_int(rows, backend=None):
    """Exact determinant of a square integer matrix given as a list of rows."""
    backend = backend or ("native" if fits_native(rows) else "python")
    if backend == "native":
        if not rows:
            return 1
        return int(_native.bareiss_det(np.array(rows, dtype=np.int64)))
    return _pykernels.bareiss_det(rows)


def rank_int(rows, backend=None):
    """Exact rank of an integer matrix given as a list of rows."""
    if not rows or not rows[0]:
        return 0
    backend = backend or ("native" if fits_native(rows) else "python")
    if backend == "native":
        return int(_native.bareiss_rank(np.array(rows, dtype=np.int64)))
    return _pykernels.bareiss_rank(rows)
