"""Brute-force reference implementations for cross-checking.

Everything here works on (n, pairs) where pairs is a list of (u, v)
endpoint tuples indexed by edge id.  No package imports: these oracles
must stay independent of the code they check.  All of them are
exponential and meant for n <= 10 or so.
"""

from __future__ import annotations

import itertools


def brute_edge_connectivity(n: int, pairs) -> int:
    """Minimum boundary over all proper vertex subsets (0 if disconnected)."""
    if n < 2:
        return 0
    best = None
    for bits in range(1, 1 << (n - 1)):  # vertex n-1 stays on the far side
        side = {v for v in range(n) if bits >> v & 1}
        cross = sum(1 for u, v in pairs if (u in side) != (v in side))
        if best is None or cross < best:
            best = cross
    return best


def brute_min_odd_cut(n: int, pairs) -> int | None:
    """Minimum boundary over odd vertex subsets; None when n is odd."""
    if n % 2 == 1:
        return None
    best = None
    for bits in range(1, 1 << n):
        if bin(bits).count("1") % 2 == 0:
            continue
        side = {v for v in range(n) if bits >> v & 1}
        cross = sum(1 for u, v in pairs if (u in side) != (v in side))
        if best is None or cross < best:
            best = cross
    return best


def brute_perfect_matchings(n: int, pairs) -> list[frozenset]:
    """All perfect matchings as frozensets of edge ids."""
    by_vertex: list[list[int]] = [[] for _ in range(n)]
    for e, (u, v) in enumerate(pairs):
        by_vertex[u].append(e)
        by_vertex[v].append(e)
    out: list[frozenset] = []

    def grow(covered: set[int], chosen: list[int]) -> None:
        if len(covered) == n:
            out.append(frozenset(chosen))
            return
        w = min(v for v in range(n) if v not in covered)
        for e in by_vertex[w]:
            u, v = pairs[e]
            other = v if u == w else u
            if other in covered:
                continue
            covered.add(w)
            covered.add(other)
            chosen.append(e)
            grow(covered, chosen)
            chosen.pop()
            covered.discard(w)
            covered.discard(other)

    if n % 2 == 0:
        grow(set(), [])
    return out


def brute_pdpm_exists(n: int, pairs, k: int) -> bool:
    """Do k pairwise edge-disjoint perfect matchings exist?"""
    if n == 0:
        return True
    pms = brute_perfect_matchings(n, pairs)
    order = sorted(range(len(pms)))

    def extend(start: int, used: frozenset, depth: int) -> bool:
        if depth == k:
            return True
        for idx in order[start:]:
            m = pms[idx]
            if used & m:
                continue
            if extend(idx + 1, used | m, depth + 1):
                return True
        return False

    # matchings may repeat only when disjoint, i.e. never; ordered scan is exact
    return extend(0, frozenset(), 0)


def brute_local_edge_connectivity(n: int, pairs, s: int, t: int) -> int:
    """Max edge-disjoint s-t paths: Edmonds-Karp on the undirected model.

    Each instance adds capacity 1 in both directions; residual updates
    make path packing exact (greedy packing without residuals is not).
    """
    if s == t:
        raise ValueError("s and t must differ")
    cap = [[0] * n for _ in range(n)]
    for u, v in pairs:
        cap[u][v] += 1
        cap[v][u] += 1
    flow = 0
    while True:
        prev = [-1] * n
        prev[s] = s
        queue = [s]
        while queue and prev[t] == -1:
            w = queue.pop(0)
            for x in range(n):
                if prev[x] == -1 and cap[w][x] > 0:
                    prev[x] = w
                    queue.append(x)
        if prev[t] == -1:
            return flow
        w = t
        while w != s:
            cap[prev[w]][w] -= 1
            cap[w][prev[w]] += 1
            w = prev[w]
        flow += 1


def all_even_subsets_cover(n: int, pairs, members, load: int = 2) -> bool:
    """Every member has even degree at every vertex and loads sum to `load`."""
    counts = [0] * len(pairs)
    for m in members:
        deg = [0] * n
        for e in m:
            u, v = pairs[e]
            deg[u] += 1
            deg[v] += 1
            counts[e] += 1
        if any(d % 2 for d in deg):
            return False
    return all(c == load for c in counts)


def multiplicity(pairs) -> dict[tuple[int, int], int]:
    mu: dict[tuple[int, int], int] = {}
    for u, v in pairs:
        key = (min(u, v), max(u, v))
        mu[key] = mu.get(key, 0) + 1
    return mu
