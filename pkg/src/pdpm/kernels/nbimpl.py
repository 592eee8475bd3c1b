"""Numba backend: the shared kernel bodies compiled with @njit.

Import fails when numba is unavailable; the dispatcher then falls back
to pyimpl unless PDPM_KERNELS=numba demands this backend.
"""

from __future__ import annotations

from numba import njit

from . import core
from .core import BIG, FOUND, NONE, RUNNING  # noqa: F401

_OPTS = dict(cache=True, nogil=True)

mincut_parity_scan = njit(**_OPTS)(core.mincut_parity_scan)
cuts_upto_scan = njit(**_OPTS)(core.cuts_upto_scan)
pdpm_search_run = njit(**_OPTS)(core.pdpm_search_run)
disjoint_tuple_scan = njit(**_OPTS)(core.disjoint_tuple_scan)
canon_cert = njit(**_OPTS)(core.canon_cert)
regular_scan_step = njit(**_OPTS)(core.regular_scan_step)
