"""Fallback backend: plain-python kernel bodies plus vectorized scans.

The backtracking kernels run the shared bodies from core.py directly.
The two exhaustive cut scans are replaced by chunked numpy evaluations
over all subset indices; outputs are identical to the gray-code loops,
including the smallest-witness-mask tie-break.
"""

from __future__ import annotations

import numpy as np

from . import core
from .core import (  # noqa: F401  (re-exported kernel entry points)
    BIG,
    FOUND,
    NONE,
    RUNNING,
    canon_cert,
    disjoint_tuple_scan,
    pdpm_search_run,
    regular_scan_step,
)

_CHUNK = 1 << 18


def _pairs_from_csr(aptr, anbr, awt, n):
    pa, pb, pw = [], [], []
    for v in range(n):
        for q in range(int(aptr[v]), int(aptr[v + 1])):
            u = int(anbr[q])
            if v < u:
                pa.append(v)
                pb.append(u)
                pw.append(int(awt[q]))
    return (
        np.asarray(pa, dtype=np.int64),
        np.asarray(pb, dtype=np.int64),
        np.asarray(pw, dtype=np.int64),
    )


def _chunk_cuts(idx, pa, pb, pw):
    acc = np.zeros(idx.shape[0], dtype=np.int64)
    for a, b, w in zip(pa, pb, pw):
        acc += w * (((idx >> a) ^ (idx >> b)) & 1)
    return acc


def mincut_parity_scan(aptr, anbr, awt, deg, n):
    pa, pb, pw = _pairs_from_csr(aptr, anbr, awt, n)
    total = np.int64(1) << (n - 1)
    best = [int(BIG), int(BIG)]
    bmask = [0, 0]
    lo = 1
    while lo < total:
        hi = min(int(total), lo + _CHUNK)
        idx = np.arange(lo, hi, dtype=np.int64)
        acc = _chunk_cuts(idx, pa, pb, pw)
        par = np.bitwise_count(idx.astype(np.uint64)).astype(np.int64) & 1
        for p in (0, 1):
            sel = np.nonzero(par == p)[0]
            if sel.shape[0] == 0:
                continue
            vals = acc[sel]
            mn = int(vals.min())
            if mn > best[p]:
                continue
            cand = idx[sel[vals == mn]]
            mk = int(cand.min())
            if mn < best[p] or (mn == best[p] and mk < bmask[p]):
                best[p] = mn
                bmask[p] = mk
        lo = hi
    return (
        np.int64(best[0]),
        np.int64(bmask[0]),
        np.int64(best[1]),
        np.int64(bmask[1]),
    )


def cuts_upto_scan(aptr, anbr, awt, deg, n, climit):
    pa, pb, pw = _pairs_from_csr(aptr, anbr, awt, n)
    total = np.int64(1) << (n - 1)
    found = []
    lo = 1
    while lo < total:
        hi = min(int(total), lo + _CHUNK)
        idx = np.arange(lo, hi, dtype=np.int64)
        acc = _chunk_cuts(idx, pa, pb, pw)
        found.append(idx[acc <= climit])
        lo = hi
    if not found:
        return np.empty(0, dtype=np.int64)
    return np.concatenate(found)
