"""The Petersen graph with labeled perfect matchings and stacked variants.

The fixed drawing: outer circuit 0-1-2-3-4-0, inner vertices 5..9 with
spokes (i, 5+i), and the inner 5-circuit visiting 5,7,9,6,8.  Every graph
built here keeps this numbering, so certificates stay reproducible.

A "stack" P + sum of matchings adds one parallel instance per listed
matching edge.  Each perfect matching of a stacked graph projects onto one
of the six matchings of the base graph; that index is its type.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .kernels import impl
from .matching import Budget, ClassVerdict, classify, enumerate_perfect_matchings
from .connectivity import edge_connectivity
from .multigraph import (
    Multigraph,
    MultigraphError,
    Provenance,
    add_edge_family,
)

_UNBOUNDED = (1 << 62) - 1

OUTER_CYCLE = tuple((i, (i + 1) % 5) for i in range(5))
SPOKES = tuple((i, 5 + i) for i in range(5))
INNER_CYCLE = ((5, 7), (7, 9), (6, 9), (6, 8), (5, 8))


def petersen() -> Multigraph:
    """The Petersen graph on vertices 0..9 in the fixed drawing."""
    pairs = list(OUTER_CYCLE) + list(SPOKES) + list(INNER_CYCLE)
    return Multigraph(10, pairs)


def vertex_pairs(g: Multigraph, matching) -> frozenset:
    """Project instance ids onto unordered endpoint pairs."""
    out = set()
    for e in matching:
        u, v = g.endpoints(e)
        if (u, v) in out:
            raise MultigraphError("two instances project onto the same pair")
        out.add((u, v))
    return frozenset(out)


@lru_cache(maxsize=1)
def petersen_matchings() -> tuple[frozenset, ...]:
    """The six perfect matchings as pair-sets.

    Index 0 is the spoke matching; for j >= 1, index j is the only other
    perfect matching containing spoke j (the edge (j-1, j+4)).
    """
    p = petersen()
    pms = [vertex_pairs(p, m) for m in enumerate_perfect_matchings(p)]
    m0 = frozenset(SPOKES)
    if m0 not in pms:
        raise MultigraphError("spoke matching missing")
    ordered = [m0]
    for j in range(1, 6):
        spoke = SPOKES[j - 1]
        others = [m for m in pms if spoke in m and m != m0]
        if len(others) != 1:
            raise MultigraphError(f"spoke {spoke} lies in {len(others)} other matchings")
        ordered.append(others[0])
    if len(set(ordered)) != 6 or set(ordered) != set(pms):
        raise MultigraphError("matching labels do not exhaust the perfect matchings")
    return tuple(ordered)


def _normalize_types(types) -> tuple[int, ...]:
    ts = tuple(sorted(int(t) for t in types))
    for t in ts:
        if not 0 <= t <= 5:
            raise MultigraphError(f"matching type out of range: {t}")
    return ts


def build_stack(types) -> tuple[Multigraph, Provenance]:
    """P plus one parallel instance per edge of each listed matching.

    `types` is a multiset of indices 0..5; repeats stack repeated copies.
    New instances are appended member by member in sorted type order, each
    member's five pairs in sorted order, and are tagged ("type<t>", pair
    index) in the provenance.
    """
    ts = _normalize_types(types)
    labels = petersen_matchings()
    g = petersen()
    prov = Provenance(
        vertices={v: ("base", v) for v in range(g.n)},
        edges={e: ("base", e) for e in range(g.m)},
    )
    for t in ts:
        member = sorted(labels[t])
        g, step = add_edge_family(g, member, 1)
        for e, (tag, j) in step.edges.items():
            if tag == "new":
                prov.edges[e] = (f"type{t}", j)
    prov.check_total(g)
    return g, prov


def matching_type(g: Multigraph, matching) -> int:
    """Type of a perfect matching of a stacked graph: the index of the
    base matching its pair-set equals."""
    ps = vertex_pairs(g, matching)
    for j, m in enumerate(petersen_matchings()):
        if ps == m:
            return j
    raise MultigraphError("matching does not project onto a labeled matching")


@dataclass(frozen=True)
class CoverageReport:
    """Outcome of the exhaustive type-coverage scan on a stacked graph.

    Either every (len(types)+1)-PDPM projects onto a type multiset
    containing `types` (status verified), or `counterexample` holds one
    that does not, or the node budget ran out.
    """

    types: tuple[int, ...]
    status: str  # verified | counterexample | budget
    pm_count: int
    counterexample: tuple[frozenset, ...] | None
    nodes: int

    @property
    def verified(self) -> bool:
        return self.status == "verified"


def check_type_coverage(types, budget: Budget | None = None) -> CoverageReport:
    """Exhaustively confirm the stacking lower bound on matching types.

    For the stack over `types` (at most 4 members), enumerate every
    (len(types)+1)-tuple of pairwise disjoint perfect matchings and check
    the multiset of their types covers `types`.  An empty `types` verifies
    vacuously.  Complete scan; a verified result is an exhaustion proof.
    """
    ts = _normalize_types(types)
    if len(ts) > 4:
        raise MultigraphError("type coverage scan supports at most 4 stacked matchings")
    g, _ = build_stack(ts)
    pms = enumerate_perfect_matchings(g)
    masks = np.zeros(len(pms), dtype=np.int64)
    tarr = np.zeros(len(pms), dtype=np.int64)
    for i, pm in enumerate(pms):
        acc = 0
        for e in pm:
            acc |= 1 << e
        masks[i] = acc
        tarr[i] = matching_type(g, pm)
    need = np.zeros(6, dtype=np.int64)
    for t in ts:
        need[t] += 1
    limit = _UNBOUNDED
    if budget is not None and budget.max_nodes is not None:
        limit = int(budget.max_nodes)
    ok, wit, nodes = impl.disjoint_tuple_scan(
        masks, tarr, need, np.int64(len(ts) + 1), np.int64(limit)
    )
    if ok == 1:
        return CoverageReport(ts, "verified", len(pms), None, int(nodes))
    if ok == -1:
        return CoverageReport(ts, "budget", len(pms), None, int(nodes))
    cx = tuple(pms[int(i)] for i in wit)
    return CoverageReport(ts, "counterexample", len(pms), cx, int(nodes))


@dataclass(frozen=True)
class StackReport:
    """Multiplicity hypothesis and the three conclusions for a stack.

    With k = len(types) and r = k + 3: when every multiplicity is at most
    floor(r/2), the stack must be r-regular, r-edge-connected and class 2.
    Conclusion fields stay None when the hypothesis fails.
    """

    types: tuple[int, ...]
    r: int
    mu_max: int
    multiplicity_ok: bool
    regular: bool | None
    edge_connectivity: int | None
    class_label: int | None
    nodes: int

    @property
    def verified(self) -> bool:
        return bool(
            self.multiplicity_ok
            and self.regular
            and self.edge_connectivity == self.r
            and self.class_label == 2
        )


def stack_report(types, budget: Budget | None = None) -> StackReport:
    ts = _normalize_types(types)
    r = len(ts) + 3
    g, _ = build_stack(ts)
    mu = g.mu_max()
    if mu > r // 2:
        return StackReport(ts, r, mu, False, None, None, None, 0)
    lam, _ = edge_connectivity(g)
    verdict: ClassVerdict = classify(g, budget=budget)
    return StackReport(
        ts,
        r,
        mu,
        True,
        g.regularity() == r,
        int(lam),
        verdict.label,
        verdict.nodes,
    )
