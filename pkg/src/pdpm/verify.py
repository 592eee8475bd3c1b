"""Independent re-verification of search outputs.

Deliberately shares nothing with the search engine: every check is
recomputed from raw endpoint lists with plain set arithmetic.  Functions
return None on success or a human-readable reason string.
"""

from __future__ import annotations

from .multigraph import Multigraph


def check_matching(g: Multigraph, edges) -> str | None:
    """Edges form a matching: valid ids, no shared vertex, no repeats."""
    seen_v: set[int] = set()
    seen_e: set[int] = set()
    for e in edges:
        e = int(e)
        if not (0 <= e < g.m):
            return f"edge id {e} out of range"
        if e in seen_e:
            return f"edge id {e} repeated"
        seen_e.add(e)
        u, v = g.endpoints(e)
        if u in seen_v:
            return f"vertex {u} covered twice"
        if v in seen_v:
            return f"vertex {v} covered twice"
        seen_v.add(u)
        seen_v.add(v)
    return None


def check_perfect_matching(g: Multigraph, edges) -> str | None:
    bad = check_matching(g, edges)
    if bad:
        return bad
    if 2 * len(set(int(e) for e in edges)) != g.n:
        return f"covers {2 * len(set(edges))} of {g.n} vertices"
    return None


def check_pdpm(
    g: Multigraph,
    matchings,
    k: int | None = None,
    contain=(),
    avoid=(),
) -> str | None:
    """Pairwise edge-instance-disjoint perfect matchings meeting constraints."""
    mats = [frozenset(int(e) for e in mat) for mat in matchings]
    if k is not None and len(mats) != k:
        return f"expected {k} matchings, got {len(mats)}"
    for i, mat in enumerate(mats):
        bad = check_perfect_matching(g, mat)
        if bad:
            return f"matching {i}: {bad}"
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            inter = mats[i] & mats[j]
            if inter:
                return f"matchings {i} and {j} share instance {min(inter)}"
    union = frozenset().union(*mats) if mats else frozenset()
    for e in contain:
        if int(e) not in union:
            return f"required instance {e} missing from all members"
    for e in avoid:
        if int(e) in union:
            return f"forbidden instance {e} used"
    return None


def check_even_subgraph(g: Multigraph, edges) -> str | None:
    """Every vertex meets the edge set an even number of times."""
    deg: dict[int, int] = {}
    seen: set[int] = set()
    for e in edges:
        e = int(e)
        if not (0 <= e < g.m):
            return f"edge id {e} out of range"
        if e in seen:
            return f"edge id {e} repeated"
        seen.add(e)
        u, v = g.endpoints(e)
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    for v, d in deg.items():
        if d % 2:
            return f"vertex {v} has odd degree {d} in the subgraph"
    return None
