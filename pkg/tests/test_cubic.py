"""Cubic-graph routines: matching triples, covers, and blowups."""

import pytest

from pdpm.connectivity import ResourceError, edge_connectivity
from pdpm.cubic import (
    CYCLE_SPACE_LIMIT,
    BfCover,
    CycleDoubleCover5,
    FrTriple,
    bf_from_pdpm,
    cdc_from_pdpm,
    check_5cdc,
    check_bf_cover,
    check_fr_triple,
    find_5cdc,
    find_bf_cover,
    find_fr_triple,
    find_special_2factor,
    fr_pipeline,
    fr_reduction_split,
    k_block,
    k_gadget_blowup,
    nu_profile,
    plus_two_factor,
    recombine_fr,
    restrict_pdpm_wheel,
    wheel_blowup,
)
from pdpm.matching import Budget, enumerate_perfect_matchings, find_pdpm
from pdpm.multigraph import Multigraph, MultigraphError, complete_graph
from pdpm.petersen import petersen, petersen_matchings


def two_diamond_graph() -> Multigraph:
    """Bridgeless cubic with the 2-edge-cut {(2,6), (3,7)}."""
    return Multigraph(8, [
        (0, 1), (0, 2), (0, 3), (1, 2), (1, 3),
        (4, 5), (4, 6), (4, 7), (5, 6), (5, 7),
        (2, 6), (3, 7),
    ])


def prism(n: int) -> Multigraph:
    pairs = [(i, (i + 1) % n) for i in range(n)]
    pairs += [(n + i, n + (i + 1) % n) for i in range(n)]
    pairs += [(i, n + i) for i in range(n)]
    return Multigraph(2 * n, pairs)


def pair_ids(g: Multigraph, pairset) -> frozenset:
    """Edge ids of a pair-set on a simple graph."""
    lookup = {tuple(g.endpoints(e)): e for e in range(g.m)}
    return frozenset(lookup[tuple(sorted(p))] for p in pairset)


# -- verifiers ----------------------------------------------------------------


def test_nu_profile():
    g = complete_graph(4)
    prof = nu_profile(g, [{0, 5}, {1, 4}, {0, 5}])
    assert prof == [2, 1, 0, 0, 1, 2]
    with pytest.raises(MultigraphError):
        nu_profile(g, [{99}])


def test_check_fr_triple():
    g = complete_graph(4)
    pms = enumerate_perfect_matchings(g)
    assert check_fr_triple(g, pms) is None
    assert check_fr_triple(g, [pms[0], pms[0], pms[1]]) is None
    assert "3 matchings" in check_fr_triple(g, pms[:2])
    assert "all three" in check_fr_triple(g, [pms[0]] * 3)
    assert "matching 1" in check_fr_triple(g, [pms[0], {0, 1}, pms[1]])


def test_check_bf_cover():
    p = petersen()
    six = [pair_ids(p, m) for m in petersen_matchings()]
    assert check_bf_cover(p, six) is None
    assert "expected 6" in check_bf_cover(p, six[:5])
    doubled = six[:5] + [six[0]]
    assert "covered" in check_bf_cover(p, doubled)

    g = complete_graph(4)
    pms = enumerate_perfect_matchings(g)
    assert check_bf_cover(g, [m for m in pms for _ in range(2)]) is None


def test_check_5cdc():
    g = complete_graph(4)
    res = find_5cdc(g)
    assert res.found
    members = res.witness.members
    assert check_5cdc(g, members) is None
    assert "expected 5" in check_5cdc(g, members[:4])
    # a single edge is not an even subgraph
    odd = list(members[:4]) + [frozenset({0})]
    assert "member 4" in check_5cdc(g, odd)


# -- FR-triples ---------------------------------------------------------------


def test_find_fr_triple_variants():
    g = complete_graph(4)
    res = find_fr_triple(g)
    assert res.found
    assert check_fr_triple(g, res.witness.matchings) is None

    for i in (0, 1, 2):
        res = find_fr_triple(g, e=0, i=i)
        assert res.found
        assert sum(1 for m in res.witness.matchings if 0 in m) == i


def test_find_fr_triple_rejects_bad_args():
    g = complete_graph(4)
    with pytest.raises(MultigraphError):
        find_fr_triple(g, i=1)  # load without an edge
    with pytest.raises(MultigraphError):
        find_fr_triple(g, e=0, i=3)
    with pytest.raises(MultigraphError):
        find_fr_triple(g, e=99)
    with pytest.raises(MultigraphError):
        find_fr_triple(complete_graph(5))  # not cubic


def test_find_fr_triple_budget():
    p = petersen()
    res = find_fr_triple(p, e=0, i=2, budget=Budget(max_nodes=2))
    assert res.status == "budget"
    assert res.nodes == 3


def test_fr_reduction_split_and_recombine():
    g = two_diamond_graph()
    split = fr_reduction_split(g, (0, 1, 2, 3))
    assert split.h1.n == 4 and split.h2.n == 4
    assert split.h1.regularity() == 3

    t1 = find_fr_triple(split.h1)
    nu1 = sum(1 for m in t1.witness.matchings if split.uv in m)
    t2 = find_fr_triple(split.h2, e=split.xy, i=nu1)
    assert t1.found and t2.found
    glued = recombine_fr(split, t1.witness, t2.witness)
    assert check_fr_triple(g, glued.matchings) is None
    # crossing edges survive with the load the synthetic edge carried
    for e in split.crossing:
        assert sum(1 for m in glued.matchings if e in m) == nu1


def test_fr_reduction_split_rejects():
    g = two_diamond_graph()
    with pytest.raises(MultigraphError):
        fr_reduction_split(g, range(8))  # not proper
    with pytest.raises(MultigraphError):
        fr_reduction_split(g, (0,))  # boundary is a 3-cut
    with pytest.raises(MultigraphError):
        fr_reduction_split(petersen(), (0, 1, 2, 3, 4))  # no 2-cut there


def test_recombine_rejects_mismatched_loads():
    g = two_diamond_graph()
    split = fr_reduction_split(g, (0, 1, 2, 3))
    pms1 = enumerate_perfect_matchings(split.h1)
    pms2 = enumerate_perfect_matchings(split.h2)
    with1 = [m for m in pms1 if split.uv in m]
    without2 = [m for m in pms2 if split.xy not in m]
    t1 = FrTriple((with1[0], with1[0], pms1[0]))
    if check_fr_triple(split.h1, t1.matchings) is not None:
        t1 = FrTriple((with1[0], with1[0], [m for m in pms1 if split.uv not in m][0]))
    t2 = FrTriple(tuple(without2[:1] * 2 + [without2[-1]]))
    assert check_fr_triple(split.h2, t2.matchings) is None
    with pytest.raises(MultigraphError):
        recombine_fr(split, t1, t2)
    with pytest.raises(MultigraphError):
        recombine_fr(split, FrTriple((pms1[0],) * 3), t2)  # load 3 triple


# -- 2-factors and the pipeline -------------------------------------------------


def test_find_special_2factor():
    p = petersen()
    res = find_special_2factor(p)
    assert res.found
    factor = res.witness
    deg = [0] * p.n
    for e in factor:
        a, b = p.endpoints(e)
        deg[a] += 1
        deg[b] += 1
    assert all(d == 2 for d in deg)

    res = find_special_2factor(p, pair=(0, 1))
    assert res.found
    assert 0 in res.witness and 1 in res.witness


def test_find_special_2factor_rejects():
    p = petersen()
    with pytest.raises(MultigraphError):
        find_special_2factor(p, pair=(0, 0))
    with pytest.raises(MultigraphError):
        find_special_2factor(p, pair=(0, 2))  # (0,1) and (2,3) share nothing


def test_plus_two_factor():
    p = petersen()
    res = find_special_2factor(p)
    h, order = plus_two_factor(p, res.witness)
    assert h.n == p.n
    assert h.m == p.m + 10
    assert order == tuple(sorted(res.witness))
    for j, e in enumerate(order):
        assert tuple(h.endpoints(p.m + j)) == tuple(p.endpoints(e))
    with pytest.raises(MultigraphError):
        plus_two_factor(p, enumerate_perfect_matchings(p)[0])


def test_fr_pipeline_loads():
    p = petersen()
    for i in (0, 1, 2):
        triple = fr_pipeline(p, 0, i)
        assert check_fr_triple(p, triple.matchings) is None
        assert sum(1 for m in triple.matchings if 0 in m) == i


def test_fr_pipeline_rejects():
    with pytest.raises(MultigraphError):
        fr_pipeline(complete_graph(5), 0, 1)  # not cubic
    with pytest.raises(MultigraphError):
        fr_pipeline(two_diamond_graph(), 0, 1)  # lambda = 2
    with pytest.raises(MultigraphError):
        fr_pipeline(petersen(), 0, 5)
    with pytest.raises(MultigraphError):
        fr_pipeline(petersen(), 99, 1)
    with pytest.raises(ResourceError):
        fr_pipeline(petersen(), 0, 1, budget=Budget(max_seconds=0.0))


# -- covers ---------------------------------------------------------------------


def test_find_bf_cover():
    for g in (complete_graph(4), petersen()):
        res = find_bf_cover(g)
        assert res.found
        assert check_bf_cover(g, res.witness.matchings) is None


def test_bf_from_pdpm():
    p = petersen()
    spokes = pair_ids(p, petersen_matchings()[0])
    factor = frozenset(range(p.m)) - spokes
    h, order = plus_two_factor(p, factor)
    res = find_pdpm(h, 5)
    assert res.found
    cover = bf_from_pdpm(p, factor, res.witness)
    assert isinstance(cover, BfCover)
    assert check_bf_cover(p, cover.matchings) is None
    with pytest.raises(MultigraphError):
        bf_from_pdpm(p, factor, res.witness.matchings[:4])


def test_find_5cdc():
    for g in (complete_graph(4), petersen()):
        res = find_5cdc(g)
        assert res.found
        assert isinstance(res.witness, CycleDoubleCover5)
        assert check_5cdc(g, res.witness.members) is None

    res = find_5cdc(petersen(), budget=Budget(max_nodes=5))
    assert res.status == "budget"


def test_cycle_space_limit():
    big = prism(CYCLE_SPACE_LIMIT + 2)  # dimension n + 1
    with pytest.raises(ResourceError):
        find_5cdc(big)


# -- blowups ----------------------------------------------------------------------


def test_wheel_blowup_shape():
    g = complete_graph(6)
    bw = wheel_blowup(g)
    assert bw.graph.n == 5 * g.n
    assert bw.graph.m == 10 * g.n + g.m  # doubled rims plus crossings
    assert bw.graph.regularity() == 5
    lam, _ = edge_connectivity(bw.graph)
    assert lam == 5
    assert len(bw.designated["crossing"]) == g.m
    assert set(bw.copies) == {f"c{v}" for v in range(g.n)}
    for cm in bw.copies.values():
        assert len(cm.boundary) == 5
    with pytest.raises(MultigraphError):
        wheel_blowup(petersen())


def test_wheel_blowup_restriction():
    g = complete_graph(6)
    bw = wheel_blowup(g)
    res = find_pdpm(bw.graph, 5)
    assert res.found
    restricted = restrict_pdpm_wheel(bw, res.witness)
    assert len(restricted) == 5
    seen = set()
    for m in restricted:
        assert not (m & seen)
        seen |= m
    with pytest.raises(MultigraphError):
        restrict_pdpm_wheel(bw, res.witness.matchings[:4])


def test_restrict_needs_base():
    from pdpm.constructions import gadget_k4

    out = gadget_k4(5)
    with pytest.raises(MultigraphError):
        restrict_pdpm_wheel(out, [frozenset()] * 5)


def test_k_block_shape():
    b = k_block()
    assert b.n == 5
    assert b.degree(4) == 6
    assert all(b.degree(v) == 5 for v in range(4))


def test_k_gadget_blowup_cdc():
    p = petersen()
    kb = k_gadget_blowup(p)
    assert kb.graph.n == 4 * p.n
    assert kb.graph.regularity() == 5
    assert len(kb.designated["crossing"]) == 2 * p.m
    for v in range(p.n):
        assert len(kb.designated[f"cut.c{v}"]) == 6

    res = find_pdpm(kb.graph, 5)
    assert res.found
    cdc = cdc_from_pdpm(kb, res.witness)
    assert check_5cdc(p, cdc.members) is None
    with pytest.raises(MultigraphError):
        cdc_from_pdpm(kb, res.witness.matchings[:4])


def test_k_gadget_blowup_rejects():
    with pytest.raises(MultigraphError):
        k_gadget_blowup(complete_graph(6))  # not cubic
    with pytest.raises(MultigraphError):
        k_gadget_blowup(Multigraph(2, [(0, 1)] * 3))  # not simple
    with pytest.raises(MultigraphError):
        k_gadget_blowup(prism(3))  # cyclic 3-cut between the triangles
