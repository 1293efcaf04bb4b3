"""Hot kernels with a numba fast path and a pure-numpy fallback.

Set VERITOP_NUMBA=0 to force the numpy path; otherwise numba is used
whenever it imports cleanly.  Both backends expose the same functions
and must return bit-identical results.
"""

import os

NUMBA_ENV = "VERITOP_NUMBA"


def numba_requested() -> bool:
    flag = os.environ.get(NUMBA_ENV, "").strip().lower()
    return flag not in {"0", "false", "no", "off"}


def _load_backend():
    if numba_requested():
        try:
            from . import numba_backend
            return numba_backend
        except ImportError:
            pass
    from . import numpy_backend
    return numpy_backend


_backend = _load_backend()

backend_name = _backend.NAME
dovetail_any_scripted = _backend.dovetail_any_scripted
run_all_scripted = _backend.run_all_scripted
union_closure = _backend.union_closure
intersection_closure = _backend.intersection_closure
continuous_assignments = _backend.continuous_assignments

# Universes small enough for the 2**n closure tables.
TABLE_MAX_POINTS = 20
