"""Exhaustive catalogs of small connected regular simple graphs.

One graph per isomorphism class, produced by a resumable row-by-row
scan kernel and deduplicated with a branch-and-bound canonical
certificate.  Intended for fixture generation and hunt streams at
exhaustive scale (n <= 16), not as a general-purpose generator.
"""

from __future__ import annotations

import numpy as np

from .kernels import impl
from .multigraph import Multigraph, MultigraphError

_LEAF_BATCH = 512


def regular_graphs(n: int, d: int) -> list[Multigraph]:
    """All connected d-regular simple graphs on n vertices, up to
    isomorphism, in a deterministic order."""
    if not 0 < n <= 16:
        raise MultigraphError(f"catalog scan capped at n <= 16, got {n}")
    if d < 0 or d >= n:
        raise MultigraphError(f"degree {d} impossible on {n} vertices")
    if (n * d) % 2 != 0:
        return []
    if d == 0:
        return [Multigraph(1)] if n == 1 else []

    neigh = np.zeros(n, dtype=np.int64)
    deg = np.zeros(n, dtype=np.int64)
    cand = np.zeros(n * n, dtype=np.int64)
    ccnt = np.zeros(n, dtype=np.int64)
    need = np.zeros(n, dtype=np.int64)
    comb = np.zeros(n * n, dtype=np.int64)
    scal = np.zeros(4, dtype=np.int64)
    leaves = np.zeros(_LEAF_BATCH * n, dtype=np.int64)

    seen: set[tuple[int, int]] = set()
    out: list[Multigraph] = []
    while True:
        done, nl = impl.regular_scan_step(
            np.int64(n), np.int64(d), neigh, deg, cand, ccnt, need, comb,
            scal, leaves, np.int64(_LEAF_BATCH),
        )
        for i in range(int(nl)):
            row = leaves[i * n : (i + 1) * n].copy()
            key = impl.canon_cert(row, np.int64(n))
            key = (int(key[0]), int(key[1]))
            if key in seen:
                continue
            seen.add(key)
            pairs = [
                (v, w)
                for v in range(n)
                for w in range(v + 1, n)
                if int(row[v]) >> w & 1
            ]
            out.append(Multigraph(n, pairs))
        if int(done) == 1:
            break
    return out


def cubic_graphs(n: int) -> list[Multigraph]:
    return regular_graphs(n, 3)


def quintic_graphs(n: int) -> list[Multigraph]:
    return regular_graphs(n, 5)
