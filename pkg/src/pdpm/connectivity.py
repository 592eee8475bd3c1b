"""Edge and vertex connectivity with explicit cut witnesses.

Global minimum cuts come from the contraction/merge algorithm on
multiplicity weights.  Minimum odd cuts use the exhaustive parity scan
up to n = 24 and the Gomory-Hu route above that; a minimum odd cut is
always attained among the cut tree's fundamental cuts, so scanning the
odd-sided tree cuts suffices.  Exhaustive cut enumeration is capped at
n = 32 and rejected above with a resource error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernels import impl
from .multigraph import Multigraph, MultigraphError

BRUTE_ODD_LIMIT = 24
ENUM_LIMIT = 32


class ResourceError(MultigraphError):
    """Input exceeds a documented exhaustive-scale budget."""


@dataclass(frozen=True)
class CutCertificate:
    """One side of a bipartition plus its boundary instances."""

    side: tuple[int, ...]
    boundary: tuple[int, ...]
    value: int
    odd: bool

    def verify(self, g: Multigraph) -> bool:
        if not self.side or len(self.side) >= g.n:
            return False
        b = g.boundary(self.side)
        return (
            b == tuple(sorted(self.boundary))
            and self.value == len(b)
            and self.odd == (len(self.side) % 2 == 1)
        )


def _certificate(g: Multigraph, side) -> CutCertificate:
    side = tuple(sorted(int(v) for v in side))
    b = g.boundary(side)
    return CutCertificate(side=side, boundary=b, value=len(b), odd=len(side) % 2 == 1)


def _weight_matrix(g: Multigraph) -> np.ndarray:
    w = np.zeros((g.n, g.n), dtype=np.int64)
    eu, ev = g.endpoint_arrays()
    np.add.at(w, (eu, ev), 1)
    np.add.at(w, (ev, eu), 1)
    return w


def _weighted_csr(g: Multigraph):
    """Aggregated neighbor CSR over distinct pairs, for the scan kernels."""
    w = _weight_matrix(g)
    aptr = [0]
    anbr: list[int] = []
    awt: list[int] = []
    for v in range(g.n):
        nz = np.nonzero(w[v])[0]
        anbr.extend(int(u) for u in nz)
        awt.extend(int(w[v, u]) for u in nz)
        aptr.append(len(anbr))
    deg = w.sum(axis=1)
    return (
        np.asarray(aptr, dtype=np.int64),
        np.asarray(anbr, dtype=np.int64),
        np.asarray(awt, dtype=np.int64),
        deg.astype(np.int64),
    )


def _mask_vertices(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


# -- global minimum cut ----------------------------------------------------


def edge_connectivity(g: Multigraph) -> tuple[int, CutCertificate]:
    """Global edge connectivity with a minimum-cut witness."""
    if g.n < 2:
        raise MultigraphError(f"edge connectivity needs >= 2 vertices, got {g.n}")
    if not g.is_connected():
        comp = g.components()[0]
        return 0, _certificate(g, comp)
    w = _weight_matrix(g)
    n = g.n
    groups: list[list[int]] = [[v] for v in range(n)]
    active = list(range(n))
    best_val = None
    best_side: list[int] = []
    while len(active) > 1:
        # maximum adjacency order, smallest index on ties
        start = active[0]
        in_a = {start}
        wsum = {v: int(w[start, v]) for v in active if v != start}
        order = [start]
        while wsum:
            t = max(sorted(wsum), key=lambda v: wsum[v])
            order.append(t)
            del wsum[t]
            in_a.add(t)
            for v in wsum:
                wsum[v] += int(w[t, v])
        s, t = order[-2], order[-1]
        phase_cut = int(sum(w[t, v] for v in active if v != t))
        if best_val is None or phase_cut < best_val:
            best_val = phase_cut
            best_side = list(groups[t])
        # merge t into s
        for v in active:
            if v not in (s, t):
                w[s, v] += w[t, v]
                w[v, s] = w[s, v]
        groups[s].extend(groups[t])
        active.remove(t)
    return int(best_val), _certificate(g, best_side)


# -- max flow --------------------------------------------------------------


def local_edge_connectivity(g: Multigraph, u: int, v: int) -> int:
    """Maximum number of pairwise edge-disjoint u-v paths."""
    f, _ = _max_flow(_weight_matrix(g), u, v)
    return f


def _max_flow(cap: np.ndarray, s: int, t: int) -> tuple[int, np.ndarray]:
    """Integer max flow by shortest augmenting paths; returns (value, residual)."""
    if s == t:
        raise MultigraphError("flow endpoints must differ")
    n = cap.shape[0]
    res = cap.astype(np.int64).copy()
    total = 0
    while True:
        parent = np.full(n, -1, dtype=np.int64)
        parent[s] = s
        queue = [s]
        qi = 0
        while qi < len(queue) and parent[t] < 0:
            x = queue[qi]
            qi += 1
            for y in np.nonzero(res[x] > 0)[0]:
                if parent[y] < 0:
                    parent[y] = x
                    queue.append(int(y))
        if parent[t] < 0:
            break
        # bottleneck along the path
        bn = None
        y = t
        while y != s:
            x = int(parent[y])
            c = int(res[x, y])
            bn = c if bn is None else min(bn, c)
            y = x
        y = t
        while y != s:
            x = int(parent[y])
            res[x, y] -= bn
            res[y, x] += bn
            y = x
        total += bn
    return total, res


def _min_cut_side(cap: np.ndarray, s: int, t: int) -> tuple[int, set[int]]:
    f, res = _max_flow(cap, s, t)
    n = cap.shape[0]
    seen = {s}
    stack = [s]
    while stack:
        x = stack.pop()
        for y in np.nonzero(res[x] > 0)[0]:
            if int(y) not in seen:
                seen.add(int(y))
                stack.append(int(y))
    return f, seen


# -- Gomory-Hu cut tree ----------------------------------------------------


def gomory_hu_tree(g: Multigraph) -> list[tuple[int, int, int]]:
    """Cut tree edges (v, parent, flow) by the reparenting construction."""
    if g.n < 2:
        raise MultigraphError("cut tree needs >= 2 vertices")
    cap = _weight_matrix(g)
    n = g.n
    parent = np.zeros(n, dtype=np.int64)
    fl = np.zeros(n, dtype=np.int64)
    for s in range(1, n):
        t = int(parent[s])
        f, side = _min_cut_side(cap, s, t)
        fl[s] = f
        for v in range(n):
            if v != s and v in side and parent[v] == t:
                parent[v] = s
        if int(parent[t]) in side:
            parent[s] = parent[t]
            parent[t] = s
            fl[s] = fl[t]
            fl[t] = f
    return [(v, int(parent[v]), int(fl[v])) for v in range(1, n)]


# -- minimum odd cut -------------------------------------------------------


def min_odd_cut(g: Multigraph) -> tuple[int, CutCertificate]:
    """Smallest boundary over vertex sets of odd size (proper, nonempty)."""
    if g.n < 2:
        raise MultigraphError(f"odd cut needs >= 2 vertices, got {g.n}")
    if g.n % 2 == 1:
        # every bipartition has exactly one odd side
        val, cert = edge_connectivity(g)
        side = cert.side if len(cert.side) % 2 == 1 else tuple(
            v for v in range(g.n) if v not in set(cert.side)
        )
        return val, _certificate(g, side)
    if not g.is_connected():
        for comp in g.components():
            if len(comp) % 2 == 1:
                return 0, _certificate(g, comp)
        # all components even: positive odd cuts exist inside components,
        # and both exact routes below handle disconnected input
    if g.n <= BRUTE_ODD_LIMIT:
        args = _weighted_csr(g)
        _, _, best_odd, mask_odd = impl.mincut_parity_scan(*args, g.n)
        return int(best_odd), _certificate(g, _mask_vertices(int(mask_odd)))
    # Gomory-Hu route: a minimum odd cut appears among the tree's
    # fundamental cuts
    tree = gomory_hu_tree(g)
    children: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for v, p, _ in tree:
        children[p].append(v)

    def subtree(v: int) -> set[int]:
        out = set()
        stack = [v]
        while stack:
            x = stack.pop()
            out.add(x)
            stack.extend(children[x])
        return out

    best: tuple[int, tuple[int, ...]] | None = None
    for v, _, f in tree:
        side = subtree(v)
        if len(side) % 2 == 0:
            continue
        key = (f, tuple(sorted(side)))
        if best is None or key < best:
            best = key
    if best is None:
        raise MultigraphError("no odd fundamental cut found")
    return best[0], _certificate(g, best[1])


def is_r_graph(g: Multigraph, r: int):
    """r-regular and every odd vertex set has boundary >= r.

    Returns (True, None) or (False, witness); the witness is either a
    (vertex, degree) pair or a CutCertificate for a thin odd cut.
    """
    deg = g.degrees()
    for v in range(g.n):
        if int(deg[v]) != r:
            return False, (v, int(deg[v]))
    if g.n % 2 == 1:
        # the full vertex set is odd with empty boundary
        return False, CutCertificate(
            side=tuple(range(g.n)), boundary=(), value=0, odd=True
        )
    if g.n >= 2:
        # odd cuts dominate the global minimum cut
        lam, _ = edge_connectivity(g)
        if lam >= r:
            return True, None
    val, cert = min_odd_cut(g)
    if val < r:
        return False, cert
    return True, None


# -- vertex connectivity (small k) -----------------------------------------


def vertex_connectivity_at_least(g: Multigraph, k: int):
    """No vertex set of size < k disconnects g.  Returns (bool, witness).

    Exhaustive over all removal sets of size <= k-1; capped at k <= 3.
    """
    if k > 3:
        raise ResourceError(f"vertex connectivity check capped at k <= 3, got {k}")
    if g.n < k + 1:
        raise MultigraphError(f"need n >= k+1 vertices, got n={g.n}, k={k}")
    from itertools import combinations

    for size in range(0, k):
        for rem in combinations(range(g.n), size):
            keep = [v for v in range(g.n) if v not in rem]
            if not _connected_after_removal(g, set(rem), keep):
                return False, tuple(rem)
    return True, None


def _connected_after_removal(g: Multigraph, removed: set[int], keep: list[int]) -> bool:
    if not keep:
        return True
    seen = {keep[0]}
    stack = [keep[0]]
    while stack:
        v = stack.pop()
        for e in g.incident(v):
            w = g.other_end(e, v)
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(keep)


# -- exhaustive cut enumeration --------------------------------------------


def enumerate_edge_cuts_upto(g: Multigraph, c: int) -> list[CutCertificate]:
    """All bipartition cuts with at most c boundary instances.

    One certificate per unordered bipartition (the listed side avoids
    vertex n-1), ascending by side bitmask.  Exhaustive scan; rejected
    above n = 32.
    """
    if g.n > ENUM_LIMIT:
        raise ResourceError(f"cut enumeration capped at n <= {ENUM_LIMIT}, got {g.n}")
    if g.n < 2:
        raise MultigraphError("cut enumeration needs >= 2 vertices")
    args = _weighted_csr(g)
    masks = impl.cuts_upto_scan(*args, g.n, int(c))
    return [_certificate(g, _mask_vertices(int(mk))) for mk in masks]


def cyclic_edge_connectivity_at_least(g: Multigraph, k: int):
    """Every edge cut below k leaves at most one side containing a circuit.

    Restricted to cubic graphs at exhaustive scale.  Returns (bool,
    witness CutCertificate or None).
    """
    if g.regularity() != 3:
        raise MultigraphError("cyclic edge connectivity is implemented for cubic graphs")
    if g.n > ENUM_LIMIT:
        raise ResourceError(f"cyclic connectivity capped at n <= {ENUM_LIMIT}, got {g.n}")
    for cert in enumerate_edge_cuts_upto(g, k - 1):
        inside = set(cert.side)
        outside = [v for v in range(g.n) if v not in inside]
        if _has_circuit(g, cert.side) and _has_circuit(g, outside):
            return False, cert
    return True, None


def _has_circuit(g: Multigraph, X) -> bool:
    """Induced subgraph on X contains a circuit (parallel pair counts)."""
    xs = set(X)
    idx = {v: i for i, v in enumerate(sorted(xs))}
    sub = Multigraph(len(xs), [
        (idx[u], idx[v]) for u, v in (g.endpoints(e) for e in g.induced_ids(xs))
    ])
    # a component with as many edges as vertices has a circuit
    for comp in sub.components():
        if len(sub.induced_ids(comp)) >= len(comp):
            return True
    return False


# -- helper for the matching engine ----------------------------------------


def odd_cut_family(g: Multigraph, slack: int = 2, max_cuts: int = 64):
    """Thin odd cuts used as parity constraints by the matching search.

    Empty for graphs beyond exhaustive scale; the search stays correct,
    only less pruned.
    """
    if g.n > 20 or g.n < 4 or g.n % 2 == 1 or not g.is_connected():
        return []
    args = _weighted_csr(g)
    _, _, best_odd, _ = impl.mincut_parity_scan(*args, g.n)
    masks = impl.cuts_upto_scan(*args, g.n, int(best_odd) + slack)
    cuts = []
    for mk in masks:
        side = _mask_vertices(int(mk))
        if len(side) % 2 == 1:
            cuts.append(_certificate(g, side))
            if len(cuts) >= max_cuts:
                break
    return cuts
