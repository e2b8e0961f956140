"""Hot-kernel dispatch: compiled extension when built, numpy fallback otherwise.

Both implementations perform the identical butterfly (same stages, same
operand pairs), so results are bit-identical regardless of which one runs.
"""

from __future__ import annotations

import numpy as np

try:
    from . import _accel
except ImportError:  # pragma: no cover - depends on whether the ext was built
    _accel = None

HAVE_ACCEL = _accel is not None


def fwht_inplace(values: np.ndarray) -> None:
    """Unnormalized Walsh-Hadamard transform of a float64 vector, in place.

    values[j] becomes sum_t (-1)^popcount(j & t) values[t].  The length must
    be a power of two.
    """
    n = values.shape[0]
    if values.ndim != 1 or n == 0 or n & (n - 1):
        raise ValueError("length must be a positive power of two")
    if HAVE_ACCEL and values.dtype == np.float64 and values.flags.c_contiguous:
        _accel.fwht(values)
    else:
        fwht_inplace_numpy(values)


def fwht_inplace_numpy(values: np.ndarray) -> None:
    """Pure-numpy butterfly, used when the compiled kernel is unavailable."""
    if not values.flags.c_contiguous:
        raise ValueError("in-place transform needs a C-contiguous array")
    n = values.shape[0]
    h = 1
    while h < n:
        view = values.reshape(-1, 2, h)
        top = view[:, 0, :] + view[:, 1, :]
        bot = view[:, 0, :] - view[:, 1, :]
        view[:, 0, :] = top
        view[:, 1, :] = bot
        h *= 2
