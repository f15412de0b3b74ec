"""Kernel backend selection.

The compiled Cython kernels are preferred when the extension built; the
pure-Python module is the fallback.  Set IDEALSTATS_PURE=1 to force the
fallback (the benchmark uses this to compare both).
"""

from __future__ import annotations

import os

if os.environ.get("IDEALSTATS_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND: str = _impl.BACKEND

SUBSET_ALL = 0
SUBSET_HFREE = 1
SUBSET_HFULL = 2

SUBSET_CODES = {"all": SUBSET_ALL, "hfree": SUBSET_HFREE, "hfull": SUBSET_HFULL}

count = _impl.count
ek_z = _impl.ek_z
mask_hist = _impl.mask_hist
large_factor_stats = _impl.large_factor_stats
centered_omega_y_moments = _impl.centered_omega_y_moments


def subset_code(subset: str) -> int:
    try:
        return SUBSET_CODES[subset]
    except KeyError:
        raise ValueError(f"subset must be one of {sorted(SUBSET_CODES)}, got {subset!r}") from None
