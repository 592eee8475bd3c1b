"""Perfect matching enumeration and pairwise disjoint matching search.

find_pdpm runs a complete backtracking search over (vertex, slot) cells:
every vertex must be saturated in every one of the k matching slots, and
candidates at a cell automatically point upward in vertex order.  Sound
prunings only (counting, odd-cut parity, parallel-instance and empty-slot
symmetry), so `none` is an exhaustion proof.  Budgets are node based;
`budget` outcomes are first class and never conflated with `none`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .connectivity import odd_cut_family
from .kernels import impl
from .kernels.core import FOUND, NONE, RUNNING
from .multigraph import Multigraph, MultigraphError
from .verify import check_pdpm, check_perfect_matching

Matching = frozenset

_SLICE = 1 << 20
_UNBOUNDED = (1 << 62) - 1


@dataclass(frozen=True)
class Budget:
    """Search budget.  Node limits are deterministic; wall-clock limits
    are checked between node slices."""

    max_nodes: int | None = None
    max_seconds: float | None = None


@dataclass(frozen=True)
class PdpmWitness:
    matchings: tuple[frozenset, ...]
    contain: frozenset = frozenset()
    avoid: frozenset = frozenset()

    @property
    def k(self) -> int:
        return len(self.matchings)


@dataclass(frozen=True)
class PdpmResult:
    """Outcome of one k-PDPM search: found / none / budget."""

    status: str
    witness: PdpmWitness | None
    nodes: int

    @property
    def found(self) -> bool:
        return self.status == "found"


@dataclass(frozen=True)
class MaxPdpmResult:
    k: int
    witness: PdpmWitness | None
    status: str  # exact | budget
    nodes: int


@dataclass(frozen=True)
class ClassVerdict:
    """label 1 with witness, label 2 with exhaustion node count, or None
    when the budget ran out first."""

    label: int | None
    r: int
    witness: PdpmWitness | None
    nodes: int


# -- enumeration -----------------------------------------------------------


def enumerate_perfect_matchings(g: Multigraph) -> list[frozenset]:
    """All perfect matchings, ordered lexicographically by sorted ids."""
    if g.n % 2 == 1:
        return []
    if g.n == 0:
        return [frozenset()]
    matched = bytearray(g.n)
    cur: list[int] = []
    out: list[frozenset] = []

    def rec() -> None:
        v = -1
        for x in range(g.n):
            if not matched[x]:
                v = x
                break
        if v < 0:
            out.append(frozenset(cur))
            return
        matched[v] = 1
        for e in g.incident(v):
            w = g.other_end(e, v)
            if matched[w]:
                continue
            matched[w] = 1
            cur.append(e)
            rec()
            cur.pop()
            matched[w] = 0
        matched[v] = 0

    rec()
    out.sort(key=lambda s: tuple(sorted(s)))
    return out


def count_perfect_matchings(g: Multigraph) -> int:
    return len(enumerate_perfect_matchings(g))


# -- search state ----------------------------------------------------------


class _SearchState:
    """Caller-owned arrays for the resumable slot-assignment kernel."""

    def __init__(self, g: Multigraph, k: int, contain_slots: dict[int, int], avoid: set[int]):
        n, m = g.n, g.m
        self.g = g
        self.k = k
        eu, ev = g.endpoint_arrays()
        self.eu = eu.astype(np.int64)
        self.ev = ev.astype(np.int64)
        iptr = [0]
        iedg: list[int] = []
        for v in range(n):
            iedg.extend(g.incident(v))
            iptr.append(len(iedg))
        self.iptr = np.asarray(iptr, dtype=np.int64)
        self.iedg = np.asarray(iedg, dtype=np.int64)

        cuts = odd_cut_family(g)
        boundaries = [c.boundary for c in cuts]
        nc = len(boundaries)
        cptr = [0]
        cedg: list[int] = []
        for b in boundaries:
            cedg.extend(b)
            cptr.append(len(cedg))
        self.nc = nc
        self.cptr = np.asarray(cptr, dtype=np.int64)
        self.cedg = np.asarray(cedg, dtype=np.int64)
        by_edge: list[list[int]] = [[] for _ in range(m)]
        for ci, b in enumerate(boundaries):
            for e in b:
                by_edge[e].append(ci)
        ecptr = [0]
        ecut: list[int] = []
        for e in range(m):
            ecut.extend(by_edge[e])
            ecptr.append(len(ecut))
        self.ecptr = np.asarray(ecptr, dtype=np.int64)
        self.ecut = np.asarray(ecut, dtype=np.int64)
        self.cut_par = np.ones(nc, dtype=np.int64)

        self.edge_state = np.full(m, -1, dtype=np.int64)
        self.partner = np.full(k * n, -1, dtype=np.int64)
        self.slot_size = np.zeros(k, dtype=np.int64)
        self.first_edge = np.full(k, -1, dtype=np.int64)
        self.cut_cnt = np.zeros(k * nc, dtype=np.int64)
        self.scal = np.zeros(5, dtype=np.int64)
        self.st_cell = np.zeros(n * k + 1, dtype=np.int64)
        self.st_pos = np.zeros(n * k + 1, dtype=np.int64)

        for e in avoid:
            self.edge_state[e] = -2
        self.infeasible = False
        for e, j in sorted(contain_slots.items()):
            u, v = g.endpoints(e)
            if self.edge_state[e] != -1:
                raise MultigraphError(f"instance {e} both contained and avoided")
            if self.partner[j * n + u] >= 0 or self.partner[j * n + v] >= 0:
                raise MultigraphError(
                    f"contained instances collide at a vertex in slot {j}"
                )
            self.edge_state[e] = j
            self.partner[j * n + u] = e
            self.partner[j * n + v] = e
            self.slot_size[j] += 1

        self.virgin0 = np.asarray(
            [1 if self.slot_size[j] == 0 else 0 for j in range(k)], dtype=np.int64
        )
        free = self.edge_state == -1
        self.free_deg = np.zeros(n, dtype=np.int64)
        np.add.at(self.free_deg, self.eu[free], 1)
        np.add.at(self.free_deg, self.ev[free], 1)
        self.unsat = np.asarray(
            [sum(1 for j in range(k) if self.partner[j * n + v] < 0) for v in range(n)],
            dtype=np.int64,
        )
        if bool(np.any(self.free_deg < self.unsat)):
            self.infeasible = True
        self.cut_avail = np.zeros(nc, dtype=np.int64)
        for ci, b in enumerate(boundaries):
            for e in b:
                st = int(self.edge_state[e])
                if st == -1:
                    self.cut_avail[ci] += 1
                elif st >= 0:
                    self.cut_cnt[st * nc + ci] += 1
        for ci in range(nc):
            if self.cut_avail[ci] == 0:
                for j in range(k):
                    if int(self.cut_cnt[j * nc + ci]) % 2 != 1:
                        self.infeasible = True

    def run(self, node_limit: int) -> int:
        return int(
            impl.pdpm_search_run(
                self.g.n,
                self.k,
                self.eu,
                self.ev,
                self.iptr,
                self.iedg,
                self.nc,
                self.cptr,
                self.cedg,
                self.ecptr,
                self.ecut,
                self.cut_par,
                self.edge_state,
                self.partner,
                self.free_deg,
                self.unsat,
                self.slot_size,
                self.first_edge,
                self.virgin0,
                self.cut_cnt,
                self.cut_avail,
                self.st_cell,
                self.st_pos,
                self.scal,
                node_limit,
            )
        )

    @property
    def nodes(self) -> int:
        return int(self.scal[4])

    def extract(self) -> tuple[frozenset, ...]:
        mats = [set() for _ in range(self.k)]
        for e in range(self.g.m):
            st = int(self.edge_state[e])
            if st >= 0:
                mats[st].add(e)
        return tuple(frozenset(s) for s in mats)


def _normalize_constraints(g, k, contain, avoid, contain_slots):
    contain = sorted(set(int(e) for e in contain))
    avoid = set(int(e) for e in avoid)
    for e in list(contain) + sorted(avoid):
        if not (0 <= e < g.m):
            raise MultigraphError(f"constraint instance {e} out of range")
    clash = set(contain) & avoid
    if clash:
        raise MultigraphError(f"instance {min(clash)} both contained and avoided")
    if contain_slots is None:
        if len(contain) > k:
            raise MultigraphError(
                f"{len(contain)} contained instances exceed {k} slots"
            )
        slots = {e: i for i, e in enumerate(contain)}
    else:
        slots = {int(e): int(j) for e, j in contain_slots.items()}
        for e in contain:
            if e not in slots:
                raise MultigraphError(f"contained instance {e} has no slot")
        for e, j in slots.items():
            if not (0 <= j < k):
                raise MultigraphError(f"slot {j} out of range for k={k}")
    return slots, avoid


def find_pdpm(
    g: Multigraph,
    k: int,
    contain=(),
    avoid=(),
    contain_slots: dict[int, int] | None = None,
    budget: Budget | None = None,
) -> PdpmResult:
    """Search for k pairwise edge-instance-disjoint perfect matchings.

    `none` is exhaustive: the whole constrained space was refuted.  With
    a budget the search may instead report `budget`.  Node counts are
    deterministic for a given graph and constraint set.
    """
    if k < 1:
        raise MultigraphError(f"need k >= 1, got {k}")
    slots, avoid_set = _normalize_constraints(g, k, contain, avoid, contain_slots)
    contain_set = frozenset(slots)
    if g.n % 2 == 1 or g.n == 0:
        return PdpmResult(
            "none" if g.n % 2 == 1 else "found",
            None if g.n % 2 == 1 else PdpmWitness(tuple(frozenset() for _ in range(k))),
            0,
        )
    state = _SearchState(g, k, slots, avoid_set)
    if state.infeasible:
        return PdpmResult("none", None, 0)
    max_nodes = budget.max_nodes if budget and budget.max_nodes is not None else _UNBOUNDED
    max_secs = budget.max_seconds if budget else None
    t0 = time.perf_counter()
    while True:
        limit = min(max_nodes, state.nodes + _SLICE)
        status = state.run(limit)
        if status == FOUND:
            witness = PdpmWitness(state.extract(), contain_set, frozenset(avoid_set))
            bad = check_pdpm(g, witness.matchings, k, contain_set, avoid_set)
            if bad:
                raise AssertionError(f"engine produced invalid witness: {bad}")
            return PdpmResult("found", witness, state.nodes)
        if status == NONE:
            return PdpmResult("none", None, state.nodes)
        if state.nodes >= max_nodes:
            return PdpmResult("budget", None, state.nodes)
        if max_secs is not None and time.perf_counter() - t0 > max_secs:
            return PdpmResult("budget", None, state.nodes)


def max_pdpm(
    g: Multigraph, upper: int | None = None, budget: Budget | None = None
) -> MaxPdpmResult:
    """Largest k <= upper admitting a k-PDPM, by ascending exhaustive search."""
    if upper is None:
        upper = int(g.degrees().min()) if g.n else 0
    best_witness = None
    total = 0
    for k in range(1, upper + 1):
        res = find_pdpm(g, k, budget=budget)
        total += res.nodes
        if res.status == "found":
            best_witness = res.witness
            continue
        if res.status == "none":
            return MaxPdpmResult(k - 1, best_witness, "exact", total)
        return MaxPdpmResult(k - 1, best_witness, "budget", total)
    return MaxPdpmResult(upper, best_witness, "exact", total)


def classify(g: Multigraph, budget: Budget | None = None) -> ClassVerdict:
    """Class 1 (an r-PDPM exists) or class 2 (exhaustively refuted)."""
    r = g.regularity()
    if r is None or r == 0:
        raise MultigraphError("classification needs a regular graph with r >= 1")
    res = find_pdpm(g, r, budget=budget)
    if res.status == "found":
        return ClassVerdict(1, r, res.witness, res.nodes)
    if res.status == "none":
        return ClassVerdict(2, r, None, res.nodes)
    return ClassVerdict(None, r, None, res.nodes)


def parity_check(g: Multigraph, matching, X) -> bool:
    """Whether |boundary(X) ∩ M| and |X| have equal parity (M perfect)."""
    bad = check_perfect_matching(g, matching)
    if bad:
        raise MultigraphError(f"parity check needs a perfect matching: {bad}")
    cross = set(g.boundary(X)) & set(int(e) for e in matching)
    return len(cross) % 2 == len(list(X)) % 2
