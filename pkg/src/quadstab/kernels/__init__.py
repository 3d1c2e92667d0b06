"""Hot-kernel selection: compiled extension when available, pure otherwise.

The compiled core is restricted to segment positions below 2**32 and
|gamma|, |m| below 2**62; calls outside those ranges are routed to the pure
implementation regardless of what was selected at import.  Set
QUADSTAB_FORCE_PURE=1 to ignore the extension entirely (used by the
benchmark and the cross-validation tests).
"""

from __future__ import annotations

import os

from . import pure

_compiled = None
if os.environ.get("QUADSTAB_FORCE_PURE") != "1":
    try:
        from . import _ccore as _compiled
    except ImportError:
        _compiled = None

ACTIVE_IMPL = _compiled.IMPL if _compiled is not None else pure.IMPL

_POS_LIMIT = 1 << 32
_COEFF_LIMIT = 1 << 62


def sieve_range(lo: int, hi: int) -> list[int]:
    if _compiled is not None and 0 <= lo and hi <= _POS_LIMIT:
        return _compiled.sieve_range(lo, hi)
    return pure.sieve_range(lo, hi)


def count_range(lo: int, hi: int) -> int:
    if _compiled is not None and 0 <= lo and hi <= _POS_LIMIT:
        return _compiled.count_range(lo, hi)
    return pure.count_range(lo, hi)


def census_segment(
    gamma: int, m: int, lo: int, hi: int, depth: int
) -> tuple[int, list[int]]:
    if (
        _compiled is not None
        and 0 <= lo
        and hi <= _POS_LIMIT
        and abs(gamma) < _COEFF_LIMIT
        and abs(m) < _COEFF_LIMIT
    ):
        return _compiled.census_segment(gamma, m, lo, hi, depth)
    return pure.census_segment(gamma, m, lo, hi, depth)
