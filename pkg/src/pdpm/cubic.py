"""Cubic-graph machinery driven by disjoint perfect matchings.

Searches and verifiers for matching triples with bounded edge load,
six-matching double covers, five-cycle double covers, and the cut-aware
2-factors they rely on, plus the two blowups that turn questions about
5-regular multigraphs into questions about cubic graphs and back.

All witnesses are instance-id sets over the input graph, and every
verifier recomputes edge loads from the raw edge lists rather than
trusting the search that produced them.
"""

from __future__ import annotations

import itertools
import logging
import time
from dataclasses import dataclass

from .connectivity import (
    ResourceError,
    cyclic_edge_connectivity_at_least,
    edge_connectivity,
    enumerate_edge_cuts_upto,
)
from .constructions import CopyMap, GadgetOutput
from .matching import Budget, PdpmWitness, enumerate_perfect_matchings, find_pdpm
from .multigraph import Multigraph, MultigraphError, Provenance, is_underlying_cubic
from .verify import check_even_subgraph, check_pdpm, check_perfect_matching

log = logging.getLogger("pdpm.cubic")

# cycle-space enumeration grows as 2**(m - n + 1); keep it exhaustive-scale
CYCLE_SPACE_LIMIT = 20


@dataclass(frozen=True)
class FrTriple:
    """Three perfect matchings with load at most 2 on every edge."""

    matchings: tuple[frozenset, ...]


@dataclass(frozen=True)
class BfCover:
    """Six perfect matchings with load exactly 2 on every edge."""

    matchings: tuple[frozenset, ...]


@dataclass(frozen=True)
class CycleDoubleCover5:
    """Five even edge-sets (possibly empty) with load exactly 2."""

    members: tuple[frozenset, ...]


@dataclass(frozen=True)
class SearchResult:
    status: str  # found | none | budget
    witness: object | None
    nodes: int

    @property
    def found(self) -> bool:
        return self.status == "found"


def nu_profile(g: Multigraph, members) -> list[int]:
    """Per-edge membership count, recomputed from raw id sets."""
    counts = [0] * g.m
    for mem in members:
        for e in mem:
            e = int(e)
            if not 0 <= e < g.m:
                raise MultigraphError(f"edge id out of range: {e}")
            counts[e] += 1
    return counts


def check_fr_triple(g: Multigraph, matchings) -> str | None:
    mats = [frozenset(int(e) for e in m) for m in matchings]
    if len(mats) != 3:
        return f"expected 3 matchings, got {len(mats)}"
    for i, m in enumerate(mats):
        bad = check_perfect_matching(g, m)
        if bad:
            return f"matching {i}: {bad}"
    heavy = [e for e, c in enumerate(nu_profile(g, mats)) if c > 2]
    if heavy:
        return f"edge {heavy[0]} is in all three matchings"
    return None


def check_bf_cover(g: Multigraph, matchings) -> str | None:
    mats = [frozenset(int(e) for e in m) for m in matchings]
    if len(mats) != 6:
        return f"expected 6 matchings, got {len(mats)}"
    for i, m in enumerate(mats):
        bad = check_perfect_matching(g, m)
        if bad:
            return f"matching {i}: {bad}"
    off = [e for e, c in enumerate(nu_profile(g, mats)) if c != 2]
    if off:
        return f"edge {off[0]} is covered {nu_profile(g, mats)[off[0]]} times, not 2"
    return None


def check_5cdc(g: Multigraph, members) -> str | None:
    mems = [frozenset(int(e) for e in m) for m in members]
    if len(mems) != 5:
        return f"expected 5 members, got {len(mems)}"
    for i, m in enumerate(mems):
        bad = check_even_subgraph(g, m)
        if bad:
            return f"member {i}: {bad}"
    off = [e for e, c in enumerate(nu_profile(g, mems)) if c != 2]
    if off:
        return f"edge {off[0]} is covered {nu_profile(g, mems)[off[0]]} times, not 2"
    return None


def _require_cubic_bridgeless(g: Multigraph, what: str) -> None:
    if g.regularity() != 3:
        raise MultigraphError(f"{what}: graph is not cubic")
    lam, cert = edge_connectivity(g)
    if lam < 2:
        raise MultigraphError(
            f"{what}: graph has a bridge or is disconnected (lambda={lam})"
        )


def _budget_limits(budget: Budget | None) -> tuple[int | None, float | None]:
    if budget is None:
        return None, None
    # max_nodes=0 is a real (immediately exhausted) cap, not "unlimited"
    return budget.max_nodes, budget.max_seconds


# -- FR-triples -----------------------------------------------------------


def find_fr_triple(
    g: Multigraph,
    e: int | None = None,
    i: int | None = None,
    budget: Budget | None = None,
) -> SearchResult:
    """Search matching triples (with repetition) for one of load <= 2.

    With e and i given, the triple must put edge e in exactly i members.
    """
    _require_cubic_bridgeless(g, "find_fr_triple")
    if i is not None:
        if e is None:
            raise MultigraphError("a target load needs a fixed edge")
        if i not in (0, 1, 2):
            raise MultigraphError(f"target load must be 0, 1 or 2, got {i}")
    if e is not None and not 0 <= int(e) < g.m:
        raise MultigraphError(f"edge id out of range: {e}")

    pms = enumerate_perfect_matchings(g)
    max_nodes, max_secs = _budget_limits(budget)
    t0 = time.perf_counter()
    nodes = 0
    for trip in itertools.combinations_with_replacement(range(len(pms)), 3):
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            return SearchResult("budget", None, nodes)
        if max_secs is not None and nodes % 256 == 0:
            if time.perf_counter() - t0 > max_secs:
                return SearchResult("budget", None, nodes)
        mats = [pms[t] for t in trip]
        if e is not None and i is not None:
            if sum(1 for m in mats if int(e) in m) != i:
                continue
        if check_fr_triple(g, mats) is None:
            return SearchResult("found", FrTriple(tuple(mats)), nodes)
    return SearchResult("none", None, nodes)


@dataclass(frozen=True)
class TwoCutSplit:
    """A 2-edge-cut reduction into two smaller bridgeless cubic graphs.

    h1 keeps the inside of the cut plus the new edge uv; h2 keeps the
    outside plus xy.  Edge maps send each half's ids back to the
    original (None for the two synthetic edges).
    """

    graph: Multigraph
    inside: tuple[int, ...]
    cut: tuple[int, int]
    h1: Multigraph
    h2: Multigraph
    h1_edge_to_g: dict[int, int | None]
    h2_edge_to_g: dict[int, int | None]
    uv: int
    xy: int
    crossing: tuple[int, int]  # g ids of (ux, vy)


def fr_reduction_split(g: Multigraph, inside) -> TwoCutSplit:
    """Split a bridgeless cubic graph on a 2-edge-cut.

    `inside` is the vertex set X with boundary {ux, vy}, u and v inside.
    Both halves get a synthetic edge closing the cut and are verified
    bridgeless cubic.
    """
    _require_cubic_bridgeless(g, "fr_reduction_split")
    inside = tuple(sorted(set(int(v) for v in inside)))
    if not inside or len(inside) >= g.n:
        raise MultigraphError("inside must be a proper nonempty vertex set")
    bnd = g.boundary(inside)
    if len(bnd) != 2:
        raise MultigraphError(f"not a 2-edge-cut: boundary has {len(bnd)} edges")
    iset = set(inside)
    e_ux, e_vy = sorted(bnd)
    pu, qu = g.endpoints(e_ux)
    u, x = (pu, qu) if pu in iset else (qu, pu)
    pv, qv = g.endpoints(e_vy)
    v, y = (pv, qv) if pv in iset else (qv, pv)
    if u == v or x == y:
        raise MultigraphError("cut endpoints coincide; the graph has a bridge")

    def half(keep: set, a: int, b: int):
        vmap = {}
        pairs = []
        emap: dict[int, int | None] = {}
        for w in sorted(keep):
            vmap[w] = len(vmap)
        for eid in range(g.m):
            p, q = g.endpoints(eid)
            if p in keep and q in keep:
                emap[len(pairs)] = eid
                pairs.append((vmap[p], vmap[q]))
        synth = len(pairs)
        emap[synth] = None
        pairs.append((vmap[a], vmap[b]))
        return Multigraph(len(vmap), pairs), emap, synth

    h1, map1, uv = half(iset, u, v)
    h2, map2, xy = half(set(range(g.n)) - iset, x, y)
    for h, what in ((h1, "h1"), (h2, "h2")):
        _require_cubic_bridgeless(h, f"fr_reduction_split ({what})")
    return TwoCutSplit(
        graph=g,
        inside=inside,
        cut=(e_ux, e_vy),
        h1=h1,
        h2=h2,
        h1_edge_to_g=map1,
        h2_edge_to_g=map2,
        uv=uv,
        xy=xy,
        crossing=(e_ux, e_vy),
    )


def recombine_fr(split: TwoCutSplit, t1: FrTriple, t2: FrTriple) -> FrTriple:
    """Glue triples of the two halves back to a triple of the original.

    Members pair by whether they use the synthetic edge; the loads of uv
    in t1 and xy in t2 must agree.
    """
    m1 = [frozenset(m) for m in t1.matchings]
    m2 = [frozenset(m) for m in t2.matchings]
    bad = check_fr_triple(split.h1, m1)
    if bad:
        raise MultigraphError(f"h1 triple invalid: {bad}")
    bad = check_fr_triple(split.h2, m2)
    if bad:
        raise MultigraphError(f"h2 triple invalid: {bad}")
    nu1 = sum(1 for m in m1 if split.uv in m)
    nu2 = sum(1 for m in m2 if split.xy in m)
    if nu1 != nu2:
        raise MultigraphError(
            f"synthetic-edge loads differ: uv in {nu1} members, xy in {nu2}"
        )
    with1 = [m for m in m1 if split.uv in m]
    without1 = [m for m in m1 if split.uv not in m]
    with2 = [m for m in m2 if split.xy in m]
    without2 = [m for m in m2 if split.xy not in m]

    glued = []
    e_ux, e_vy = split.crossing
    for a, b in zip(with1, with2):
        mg = {split.h1_edge_to_g[e] for e in a if split.h1_edge_to_g[e] is not None}
        mg |= {split.h2_edge_to_g[e] for e in b if split.h2_edge_to_g[e] is not None}
        mg |= {e_ux, e_vy}
        glued.append(frozenset(mg))
    for a, b in zip(without1, without2):
        mg = {split.h1_edge_to_g[e] for e in a}
        mg |= {split.h2_edge_to_g[e] for e in b}
        glued.append(frozenset(mg))
    bad = check_fr_triple(split.graph, glued)
    if bad:
        raise MultigraphError(f"recombined triple failed verification: {bad}")
    return FrTriple(tuple(glued))


# -- cut-aware 2-factors ----------------------------------------------------


def _two_factor_check(g: Multigraph, factor) -> str | None:
    f = frozenset(int(e) for e in factor)
    deg = [0] * g.n
    for e in f:
        if not 0 <= e < g.m:
            return f"edge id out of range: {e}"
        p, q = g.endpoints(e)
        deg[p] += 1
        deg[q] += 1
    off = [v for v in range(g.n) if deg[v] != 2]
    if off:
        return f"vertex {off[0]} has degree {deg[off[0]]} in the factor, not 2"
    return None


def find_special_2factor(
    g: Multigraph, pair=None, budget: Budget | None = None
) -> SearchResult:
    """2-factor meeting every 3- and 4-edge-cut, optionally through a
    given adjacent edge pair.

    Scans complements of perfect matchings; a matching is accepted when
    no small cut lies entirely inside it.  Exhaustion without a witness
    contradicts a known extension theorem, so it is logged loudly and
    reported as none rather than silently absorbed.
    """
    _require_cubic_bridgeless(g, "find_special_2factor")
    contain = ()
    if pair is not None:
        e1, e2 = (int(x) for x in pair)
        if e1 == e2:
            raise MultigraphError("the pair must be two distinct edges")
        if not set(g.endpoints(e1)) & set(g.endpoints(e2)):
            raise MultigraphError("the pair must be adjacent edges")
        contain = (e1, e2)
    return _special_2factor(g, contain=contain, budget=budget)


def _special_2factor(
    g: Multigraph, contain=(), avoid=(), budget: Budget | None = None
) -> SearchResult:
    """Search with explicit 2-factor containment constraints."""
    small_cuts = [
        frozenset(c.boundary)
        for c in enumerate_edge_cuts_upto(g, 4)
        if c.value in (3, 4)
    ]
    contain = frozenset(int(e) for e in contain)
    avoid = frozenset(int(e) for e in avoid)
    max_nodes, max_secs = _budget_limits(budget)
    t0 = time.perf_counter()
    nodes = 0
    for m in enumerate_perfect_matchings(g):
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            return SearchResult("budget", None, nodes)
        if max_secs is not None and time.perf_counter() - t0 > max_secs:
            return SearchResult("budget", None, nodes)
        if contain & m or avoid - m:
            # factor = complement: required edges must miss the matching,
            # excluded edges must be inside it
            continue
        if any(cut <= m for cut in small_cuts):
            continue
        factor = frozenset(range(g.m)) - m
        bad = _two_factor_check(g, factor)
        if bad:
            raise AssertionError(f"complement of a perfect matching broke: {bad}")
        return SearchResult("found", factor, nodes)
    log.warning(
        "no cut-meeting 2-factor found on a bridgeless cubic graph; this "
        "contradicts a known extension theorem and deserves a close look"
    )
    return SearchResult("none", None, nodes)


# -- pipeline: matchings of the doubled-factor graph to FR-triples -----------


def plus_two_factor(g: Multigraph, factor) -> tuple[Multigraph, tuple[int, ...]]:
    """g with one extra parallel instance per factor edge.

    New instance m + j doubles sorted(factor)[j].  The factor must be a
    spanning union of circuits.
    """
    bad = _two_factor_check(g, factor)
    if bad:
        raise MultigraphError(f"not a 2-factor: {bad}")
    order = tuple(sorted(int(e) for e in factor))
    pairs = g.pairs()
    for e in order:
        pairs.append(g.endpoints(e))
    return Multigraph(g.n, pairs), order


def fr_pipeline(
    g: Multigraph, e: int, i: int, budget: Budget | None = None
) -> FrTriple:
    """Build an FR-triple with load exactly i on edge e.

    Doubles a cut-meeting 2-factor F (through e for i=0, avoiding e
    otherwise), verifies the doubled graph is 5-edge-connected, finds a
    2-PDPM with e in exactly max(i-1, 0) members, projects back, and
    closes with the complementary matching.  Failures carry their stage
    name; budget exhaustion raises ResourceError.
    """
    if g.regularity() != 3:
        raise MultigraphError("precondition stage: graph is not cubic")
    lam, _ = edge_connectivity(g)
    if lam < 3:
        raise MultigraphError(
            f"precondition stage: need 3-edge-connectivity, lambda={lam}"
        )
    if i not in (0, 1, 2):
        raise MultigraphError(f"precondition stage: load must be 0, 1 or 2, got {i}")
    e = int(e)
    if not 0 <= e < g.m:
        raise MultigraphError(f"precondition stage: edge id out of range: {e}")

    u, v = g.endpoints(e)
    at_u = sorted(x for x in g.incident(u) if x != e)
    if i == 0:
        res = _special_2factor(g, contain=(e, at_u[0]), budget=budget)
    else:
        # forcing both other edges at u into the factor expels e
        res = _special_2factor(g, contain=tuple(at_u), budget=budget)
    if res.status == "budget":
        raise ResourceError("two-factor stage: budget exhausted")
    if not res.found:
        raise MultigraphError("two-factor stage: no cut-meeting 2-factor found")
    factor = res.witness
    assert (e in factor) == (i == 0)

    h, order = plus_two_factor(g, factor)
    lam_h, cert = edge_connectivity(h)
    if lam_h < 5:
        raise MultigraphError(
            f"edge-connectivity stage: doubled graph has lambda={lam_h}; "
            f"thin side {cert.side}"
        )

    if i == 0:
        e_twin = g.m + order.index(e)
        pres = find_pdpm(h, 2, avoid=(e, e_twin), budget=budget)
    elif i == 1:
        pres = find_pdpm(h, 2, avoid=(e,), budget=budget)
    else:
        pres = find_pdpm(h, 2, contain=(e,), budget=budget)
    if pres.status == "budget":
        raise ResourceError("pdpm stage: budget exhausted")
    if not pres.found:
        raise MultigraphError("pdpm stage: constrained 2-PDPM refuted")

    projected = []
    for m in pres.witness.matchings:
        pm = frozenset(x if x < g.m else order[x - g.m] for x in m)
        bad = check_perfect_matching(g, pm)
        if bad:
            raise MultigraphError(f"projection stage: {bad}")
        projected.append(pm)
    n3 = frozenset(range(g.m)) - frozenset(factor)
    triple = (*projected, n3)
    bad = check_fr_triple(g, triple)
    if bad:
        raise MultigraphError(f"verify stage: {bad}")
    load = sum(1 for m in triple if e in m)
    if load != i:
        raise MultigraphError(f"verify stage: load on e is {load}, wanted {i}")
    return FrTriple(triple)


# -- six-matching covers ------------------------------------------------------


def find_bf_cover(g: Multigraph, budget: Budget | None = None) -> SearchResult:
    """Six perfect matchings covering every edge exactly twice.

    Searches a 6-PDPM of the doubled graph and projects instance ids
    back (x and x+m are the two copies of edge x).
    """
    _require_cubic_bridgeless(g, "find_bf_cover")
    double = Multigraph(g.n, g.pairs() + g.pairs())
    res = find_pdpm(double, 6, budget=budget)
    if res.status == "budget":
        return SearchResult("budget", None, res.nodes)
    if not res.found:
        log.warning(
            "no six-matching double cover on a bridgeless cubic graph; this "
            "would refute a famous conjecture and deserves a close look"
        )
        return SearchResult("none", None, res.nodes)
    mats = [frozenset(x % g.m for x in m) for m in res.witness.matchings]
    bad = check_bf_cover(g, mats)
    if bad:
        raise AssertionError(f"projected cover failed verification: {bad}")
    return SearchResult("found", BfCover(tuple(mats)), res.nodes)


def bf_from_pdpm(g: Multigraph, factor, witness) -> BfCover:
    """Six-matching cover from a 5-PDPM of g plus a doubled 2-factor.

    The witness must be valid for plus_two_factor(g, factor); the sixth
    matching is the factor's complement.
    """
    h, order = plus_two_factor(g, factor)
    mats = witness.matchings if isinstance(witness, PdpmWitness) else witness
    mats = [frozenset(int(x) for x in m) for m in mats]
    bad = check_pdpm(h, mats, 5)
    if bad:
        raise MultigraphError(f"witness invalid for the doubled graph: {bad}")
    projected = [
        frozenset(x if x < g.m else order[x - g.m] for x in m) for m in mats
    ]
    projected.append(frozenset(range(g.m)) - frozenset(int(x) for x in factor))
    bad = check_bf_cover(g, projected)
    if bad:
        raise MultigraphError(f"projected cover failed verification: {bad}")
    return BfCover(tuple(projected))


# -- five-cycle double covers --------------------------------------------------


def _cycle_space(g: Multigraph) -> list[int]:
    """All even edge-sets as bitmasks, via fundamental circuits."""
    parent_edge = [-1] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    seen = [False] * g.n
    tree = set()
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        stack = [root]
        while stack:
            a = stack.pop()
            for eid in g.incident(a):
                b = g.other_end(eid, a)
                if not seen[b]:
                    seen[b] = True
                    parent[b] = a
                    parent_edge[b] = eid
                    depth[b] = depth[a] + 1
                    tree.add(eid)
                    stack.append(b)
    basis = []
    for eid in range(g.m):
        if eid in tree:
            continue
        a, b = g.endpoints(eid)
        mask = 1 << eid
        while a != b:
            if depth[a] < depth[b]:
                a, b = b, a
            mask ^= 1 << parent_edge[a]
            a = parent[a]
        basis.append(mask)
    if len(basis) > CYCLE_SPACE_LIMIT:
        raise ResourceError(
            f"cycle space dimension {len(basis)} exceeds {CYCLE_SPACE_LIMIT}"
        )
    space = [0]
    for bm in basis:
        space += [s ^ bm for s in space]
    return sorted(space)


def find_5cdc(g: Multigraph, budget: Budget | None = None) -> SearchResult:
    """Five even edge-sets covering every edge exactly twice.

    Depth-4 scan over nondecreasing cycle-space tuples with load
    pruning; the fifth member is forced as the set of odd-load edges.
    Empty members are admitted, so shorter covers pad up naturally.
    """
    _require_cubic_bridgeless(g, "find_5cdc")
    space = _cycle_space(g)
    edge_lists = [tuple(e for e in range(g.m) if s >> e & 1) for s in space]
    max_nodes, max_secs = _budget_limits(budget)
    t0 = time.perf_counter()
    counts = bytearray(g.m)
    nodes = 0

    def full_mask(c: bytearray) -> int | None:
        fifth = 0
        for e in range(g.m):
            if c[e] == 1:
                fifth |= 1 << e
            elif c[e] != 2:
                return None
        return fifth

    def dfs(start: int, depth: int, chosen: list[int]):
        nonlocal nodes
        if depth == 4:
            fifth = full_mask(counts)
            if fifth is None:
                return None
            members = [frozenset(edge_lists[i]) for i in chosen]
            members.append(frozenset(e for e in range(g.m) if fifth >> e & 1))
            return members
        for idx in range(start, len(space)):
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                raise ResourceError("budget")
            if max_secs is not None and nodes % 1024 == 0:
                if time.perf_counter() - t0 > max_secs:
                    raise ResourceError("budget")
            ok = True
            for e in edge_lists[idx]:
                counts[e] += 1
                if counts[e] > 2:
                    ok = False
            if ok:
                found = dfs(idx, depth + 1, chosen + [idx])
                if found is not None:
                    for e in edge_lists[idx]:
                        counts[e] -= 1
                    return found
            for e in edge_lists[idx]:
                counts[e] -= 1
        return None

    try:
        members = dfs(0, 0, [])
    except ResourceError:
        return SearchResult("budget", None, nodes)
    if members is None:
        log.warning(
            "no five-cycle double cover on a bridgeless cubic graph; this "
            "would refute a famous conjecture and deserves a close look"
        )
        return SearchResult("none", None, nodes)
    bad = check_5cdc(g, members)
    if bad:
        raise AssertionError(f"cover failed verification: {bad}")
    return SearchResult("found", CycleDoubleCover5(tuple(members)), nodes)


# -- wheel blowup ---------------------------------------------------------------


def doubled_wheel5() -> Multigraph:
    """5-wheel with a doubled rim: rim 0..4, hub 5, all degrees 5."""
    pairs = []
    for j in range(5):
        pairs.append((j, (j + 1) % 5))
        pairs.append((j, (j + 1) % 5))
    for j in range(5):
        pairs.append((j, 5))
    return Multigraph(6, pairs)


def wheel_blowup(g: Multigraph) -> GadgetOutput:
    """Replace every vertex of a 5-edge-connected 5-graph by a doubled
    5-cycle; stubs attach one per rim vertex in edge-id order.

    The result is 5-regular, 5-edge-connected, and underlying cubic, on
    5 times as many vertices.  designated["crossing"][e] is the output
    instance standing for input edge e.
    """
    if g.regularity() != 5:
        raise MultigraphError("wheel_blowup: graph is not 5-regular")
    lam, cert = edge_connectivity(g)
    if lam < 5:
        raise MultigraphError(
            f"wheel_blowup: edge connectivity {lam} < 5; thin side {cert.side}"
        )
    wheel = doubled_wheel5()
    pairs = []
    prov_v = {}
    prov_e = {}
    copies = {}
    for v in range(g.n):
        emap = {}
        for j in range(5):
            for _ in range(2):
                prov_e[len(pairs)] = (f"c{v}", len(emap))
                emap[len(pairs)] = len(emap)
                pairs.append((5 * v + j, 5 * v + (j + 1) % 5))
        for j in range(5):
            prov_v[5 * v + j] = (f"c{v}", j)
        copies[f"c{v}"] = CopyMap(
            source=wheel,
            vertices={j: 5 * v + j for j in range(5)},
            edges=emap,
            boundary={},
            replaced=5,
        )
    pos = [
        {e: j for j, e in enumerate(sorted(g.incident(v)))} for v in range(g.n)
    ]
    crossing = []
    for e in range(g.m):
        p, q = g.endpoints(e)
        eid = len(pairs)
        crossing.append(eid)
        prov_e[eid] = ("cross", e)
        pairs.append((5 * p + pos[p][e], 5 * q + pos[q][e]))
        copies[f"c{p}"].boundary[eid] = 10 + pos[p][e]
        copies[f"c{q}"].boundary[eid] = 10 + pos[q][e]

    out = Multigraph(5 * g.n, pairs)
    if out.regularity() != 5 or not is_underlying_cubic(out):
        raise AssertionError("blowup degree audit failed")
    lam_out, cert = edge_connectivity(out)
    if lam_out != 5:
        raise MultigraphError(
            f"wheel_blowup: output edge connectivity {lam_out} != 5"
        )
    prov = Provenance(prov_v, prov_e)
    prov.check_total(out)
    return GadgetOutput(
        graph=out,
        provenance=prov,
        designated={"crossing": tuple(crossing)},
        marked={},
        copies=copies,
        base=g,
    )


def restrict_pdpm_wheel(blowup: GadgetOutput, witness) -> tuple[frozenset, ...]:
    """Project a 5-PDPM of the blowup down to its base graph.

    Each matching must cross every copy boundary exactly once (the copy
    rims have odd order); the crossing instances' preimages then form a
    verified 5-PDPM of the base.
    """
    g = blowup.base
    if g is None:
        raise MultigraphError("blowup output carries no base graph")
    mats = witness.matchings if isinstance(witness, PdpmWitness) else witness
    mats = [frozenset(int(x) for x in m) for m in mats]
    bad = check_pdpm(blowup.graph, mats, 5)
    if bad:
        raise MultigraphError(f"witness invalid for the blowup: {bad}")
    crossing = blowup.designated["crossing"]
    inv = {cid: e for e, cid in enumerate(crossing)}
    cuts = {
        name: frozenset(c.boundary) for name, c in blowup.copies.items()
    }
    restricted = []
    for mi, m in enumerate(mats):
        for name, cut in cuts.items():
            hits = len(m & cut)
            if hits != 1:
                raise MultigraphError(
                    f"matching {mi} crosses copy {name} {hits} times, not once"
                )
        restricted.append(frozenset(inv[x] for x in m if x in inv))
    bad = check_pdpm(g, restricted, 5)
    if bad:
        raise AssertionError(f"restriction failed verification: {bad}")
    return tuple(restricted)


# -- banded-wheel blowup for double covers ---------------------------------------


def k_block() -> Multigraph:
    """4-wheel with doubled rim and one doubled spoke.

    Hub 0, rim 1..4 in circuit order (1, 2, 3, 4); the spoke to 4 is
    doubled, making vertex 4 the degree-6 attachment vertex.
    """
    pairs = []
    rim = [(1, 2), (2, 3), (3, 4), (4, 1)]
    for a, b in rim:
        pairs.append((a, b))
        pairs.append((a, b))
    pairs += [(0, 1), (0, 2), (0, 3), (0, 4), (0, 4)]
    return Multigraph(5, pairs)


def k_gadget_blowup(g: Multigraph) -> GadgetOutput:
    """Replace every vertex of the doubled graph 2G by a banded 4-wheel
    block minus its degree-6 vertex.

    Preconditions: g cubic, simple, cyclically 5-edge-connected, and 2G
    verified 6-edge-connected.  Parallel instance pairs of 2G land on
    the same stub vertex of the block, one g-neighbor per stub vertex,
    in edge-id order.  designated["cut.c<v>"] is the 6-instance boundary
    of block v; designated["crossing"][2e], [2e+1] are the two output
    instances of input edge e.
    """
    if g.regularity() != 3:
        raise MultigraphError("k_gadget_blowup: graph is not cubic")
    if g.mu_max() != 1:
        raise MultigraphError("k_gadget_blowup: graph must be simple")
    ok, cert = cyclic_edge_connectivity_at_least(g, 5)
    if not ok:
        raise MultigraphError(
            f"k_gadget_blowup: cyclic edge connectivity below 5; "
            f"witness side {cert.side}"
        )
    double = Multigraph(g.n, g.pairs() + g.pairs())
    lam2, _ = edge_connectivity(double)
    if lam2 < 6:
        raise MultigraphError(
            f"k_gadget_blowup: doubled graph has lambda={lam2} < 6"
        )

    # block vertices: hub, near rim, far rim, near rim; stubs at hub and
    # the two near-rim vertices (two each), mirroring k_block minus 4
    block = k_block()
    internal = [
        (src, block.endpoints(src))
        for src in range(block.m)
        if 4 not in block.endpoints(src)
    ]
    pairs = []
    prov_v = {}
    prov_e = {}
    copies = {}
    designated = {}
    base_of = lambda v: 4 * v
    for v in range(g.n):
        base = base_of(v)
        for j in range(4):
            prov_v[base + j] = (f"c{v}", j)
        emap = {}
        for src, (a, b) in internal:
            prov_e[len(pairs)] = (f"c{v}", src)
            emap[len(pairs)] = src
            pairs.append((base + a, base + b))
        copies[f"c{v}"] = CopyMap(
            source=block,
            vertices={j: base + j for j in range(4)},
            edges=emap,
            boundary={},
            replaced=4,
        )
    # stub vertices in attachment order: hub, then the two near-rim corners
    stub_order = (0, 1, 3)
    stub_at = [
        {e: stub_order[j] for j, e in enumerate(sorted(g.incident(v)))}
        for v in range(g.n)
    ]
    crossing = []
    cut_edges = {v: [] for v in range(g.n)}
    for e in range(g.m):
        p, q = g.endpoints(e)
        for _ in range(2):
            eid = len(pairs)
            crossing.append(eid)
            prov_e[eid] = ("cross", len(crossing) - 1)
            pairs.append((base_of(p) + stub_at[p][e], base_of(q) + stub_at[q][e]))
            cut_edges[p].append(eid)
            cut_edges[q].append(eid)

    out = Multigraph(4 * g.n, pairs)
    if out.regularity() != 5:
        raise AssertionError("block degree audit failed")
    lam_out, cert = edge_connectivity(out)
    if lam_out != 5:
        raise MultigraphError(
            f"k_gadget_blowup: output edge connectivity {lam_out} != 5"
        )
    for v in range(g.n):
        designated[f"cut.c{v}"] = tuple(cut_edges[v])
    designated["crossing"] = tuple(crossing)
    prov = Provenance(prov_v, prov_e)
    prov.check_total(out)
    return GadgetOutput(
        graph=out,
        provenance=prov,
        designated=designated,
        marked={},
        copies=copies,
        base=g,
    )


def cdc_from_pdpm(blowup: GadgetOutput, witness) -> CycleDoubleCover5:
    """Project a 5-PDPM of the banded blowup to a five-cycle double
    cover of its base graph.

    Every matching must meet each block boundary an even number of
    times, and exactly three matchings meet each boundary twice; both
    facts are checked, then the crossing preimages are verified as even
    subgraphs covering every edge twice.
    """
    g = blowup.base
    if g is None:
        raise MultigraphError("blowup output carries no base graph")
    mats = witness.matchings if isinstance(witness, PdpmWitness) else witness
    mats = [frozenset(int(x) for x in m) for m in mats]
    bad = check_pdpm(blowup.graph, mats, 5)
    if bad:
        raise MultigraphError(f"witness invalid for the blowup: {bad}")
    crossing = blowup.designated["crossing"]
    inv = {cid: e // 2 for e, cid in enumerate(crossing)}
    for v in range(g.n):
        cut = frozenset(blowup.designated[f"cut.c{v}"])
        hits = [len(m & cut) for m in mats]
        if any(h % 2 for h in hits):
            raise MultigraphError(
                f"parity violation at block {v}: boundary hits {hits}"
            )
        if sum(1 for h in hits if h == 2) != 3:
            raise MultigraphError(
                f"block {v}: expected exactly three matchings meeting the "
                f"boundary twice, got hits {hits}"
            )
    members = [frozenset(inv[x] for x in m if x in inv) for m in mats]
    bad = check_5cdc(g, members)
    if bad:
        raise MultigraphError(f"projected cover failed verification: {bad}")
    return CycleDoubleCover5(tuple(members))
