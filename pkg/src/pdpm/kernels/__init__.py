"""Backend selection for the hot search loops.

Every kernel exists twice with identical semantics: a numba @njit build
(nbimpl) and a pure numpy/python fallback (pyimpl).  The environment
variable PDPM_KERNELS picks the backend:

    PDPM_KERNELS=numba   require numba, fail loudly if unavailable
    PDPM_KERNELS=python  force the fallback
    unset                numba when importable, fallback otherwise

Results are backend-independent; only speed differs.
"""

from __future__ import annotations

import os

_REQUESTED = os.environ.get("PDPM_KERNELS", "").strip().lower()

if _REQUESTED not in ("", "numba", "python"):
    raise RuntimeError(
        f"PDPM_KERNELS must be 'numba' or 'python', got {_REQUESTED!r}"
    )

if _REQUESTED == "python":
    from . import pyimpl as impl

    BACKEND = "python"
else:
    try:
        from . import nbimpl as impl

        BACKEND = "numba"
    except ImportError:
        if _REQUESTED == "numba":
            raise
        from . import pyimpl as impl

        BACKEND = "python"


def backend() -> str:
    """Name of the active kernel backend."""
    return BACKEND
