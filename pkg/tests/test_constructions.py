import pytest

from pdpm.connectivity import edge_connectivity, is_r_graph, local_edge_connectivity
from pdpm.constructions import (
    build_Gk,
    build_Pk,
    build_Qk,
    build_Sk,
    check_g1_certificate,
    combine_pdpm,
    find_admissible_lifting,
    gadget_cycle,
    gadget_cycle_embed,
    gadget_halfstar,
    gadget_k4,
    gadget_k4_embed,
    gadget_wheel_caps,
    lift,
    pullback_pdpm,
    qk_closure,
    replace_vertex,
    split_on_3cut,
)
from pdpm.matching import find_pdpm
from pdpm.multigraph import (
    Multigraph,
    MultigraphError,
    complete_graph,
    is_underlying_cubic,
)
from pdpm.petersen import petersen
from pdpm.verify import check_pdpm


def _assert_regular_connected(g, r):
    assert g.regularity() == r
    lam, _ = edge_connectivity(g)
    assert lam == r


def test_replace_vertex_k6():
    g = complete_graph(6)
    assignment = list(zip(sorted(g.incident(0)), sorted(g.incident(0))))
    out = replace_vertex(g, 0, g, 0, assignment)
    assert out.graph.n == 10
    _assert_regular_connected(out.graph, 5)
    host, insert = out.copies["host"], out.copies["insert"]
    assert host.replaced == 0 and insert.replaced == 0
    assert len(host.boundary) == len(insert.boundary) == 5
    out.provenance.check_total(out.graph)


def test_replace_vertex_rejects_bad_assignment():
    g = complete_graph(6)
    stubs = sorted(g.incident(0))
    with pytest.raises(MultigraphError):
        replace_vertex(g, 0, g, 0, list(zip(stubs, stubs[:4])))
    with pytest.raises(MultigraphError):
        replace_vertex(g, 0, g, 0, list(zip(stubs, [stubs[0]] * 5)))


def test_tower_small_audits():
    p1 = build_Pk(1)
    _assert_regular_connected(p1, 6)
    assert p1.n == 10

    q1 = build_Qk(1)
    assert q1.graph.n == 19
    assert set(q1.marked) >= {"v1_1", "v1_2", "u_q"}
    closed = qk_closure(q1)
    _assert_regular_connected(closed, 6)

    s1 = build_Sk(1)
    assert s1.n == 19
    _assert_regular_connected(s1, 6)


def test_g1_build():
    g1 = build_Gk(1)
    assert g1.graph.n == 190
    assert g1.graph.m == 570
    assert g1.graph.regularity() == 6
    assert len(g1.copies) == 9  # one Q-copy per D and E bundle
    ok, _ = is_r_graph(g1.graph, 6)
    assert ok


def test_g2_sizes():
    s2 = build_Sk(2)
    assert s2.n == 31  # 3q + 1 with q = 10
    assert s2.regularity() == 10


def test_g1_certificate_and_tamper():
    cert = check_g1_certificate()
    assert cert.ok
    assert not cert.failures
    assert cert.coverage.verified
    assert cert.graph_facts["even_order"]
    assert cert.graph_facts["regular"]
    assert cert.graph_facts["edge_connectivity"] == 6
    assert cert.graph_facts["odd_cut_bound"]
    assert len(cert.copy_checks) == 9
    assert all(msg == "ok" for msg in cert.copy_checks.values())
    assert len(cert.triple_counts) == 6
    bad = check_g1_certificate(swap_copy="D3")
    assert not bad.ok
    assert any(f.startswith("copy:D3") for f in bad.failures)


def test_gadget_cycle_shapes():
    for r in (3, 4, 5, 6):
        out = gadget_cycle(r)
        _assert_regular_connected(out.graph, r)
        assert out.graph.n == 2 * r + 2
        assert "u" in out.marked and "u_prime" in out.marked


def test_gadget_k4_shapes():
    for r in (3, 4, 5, 6):
        out = gadget_k4(r)
        _assert_regular_connected(out.graph, r)
        assert out.graph.n == 4
        assert set(out.marked) == {"u1", "u2", "u3", "u4"}
        d13 = out.designated["diag13"][0]
        d24 = out.designated["diag24"][0]
        assert tuple(out.graph.endpoints(d13)) == (0, 2)
        assert tuple(out.graph.endpoints(d24)) == (1, 3)


def test_gadget_cycle_embed_and_pullback():
    g = complete_graph(6)
    emb = gadget_cycle_embed(g, 0, 5)
    _assert_regular_connected(emb.graph, 5)
    assert emb.graph.n == 2 + 5 * 6  # two hubs, five copies losing a vertex
    assert len([k for k in emb.copies if k.startswith("g")]) == 5

    res = find_pdpm(emb.graph, 2)
    assert res.found
    entries = pullback_pdpm(emb, res.witness)
    assert len(entries) == 5
    for entry in entries.values():
        assert len(entry.matchings) == 2
        assert set(entry.contains) == {"e"}
    # each member matches the hub through one copy, so exactly two copies
    # see their tracked edge across the two members
    hits = sum(entry.contains["e"] for entry in entries.values())
    assert hits == 2


def test_gadget_k4_embed():
    g = complete_graph(6)
    stubs = tuple(sorted(g.incident(0)))
    e1 = stubs[0]
    chosen = stubs[1:3]  # t = (5-3)//2 + 1 = 2
    emb = gadget_k4_embed(g, 0, e1, chosen, k=3)
    _assert_regular_connected(emb.graph, 5)
    # two corners each replaced by K6 minus a vertex
    assert emb.graph.n == 4 - 2 + 2 * 5
    for name in ("g1", "g3"):
        copy = emb.copies[name]
        assert copy.tracked["e1"] == e1
        assert copy.tracked["chosen0"] == min(chosen)
    assert len(emb.designated["bridge"]) == 1
    assert len(emb.designated["u2u4"]) == 1
    assert len(emb.designated["u2_attach"]) == 4  # t routed per corner

    with pytest.raises(MultigraphError):
        gadget_k4_embed(g, 0, e1, stubs[1:4], k=3)  # wrong chosen count
    with pytest.raises(MultigraphError):
        gadget_k4_embed(g, 0, e1, (e1, stubs[1]), k=3)  # e1 reused


def test_gadget_halfstar():
    g = complete_graph(6)
    emb = gadget_halfstar(g, 0, 2)
    _assert_regular_connected(emb.graph, 5)
    assert emb.graph.n == 10
    res = find_pdpm(emb.graph, 2)
    assert res.found
    entries = pullback_pdpm(emb, res.witness)
    assert entries


def test_wheel_caps():
    g = petersen()
    # double the outer and inner 5-cycles (the complement of the spokes)
    factor = [e for e in range(g.m) if e < 5 or e >= 10]
    doubled = Multigraph(g.n, list(g.pairs()) + [tuple(g.endpoints(e)) for e in factor])
    assert doubled.regularity() == 5
    emb = gadget_cycle_embed(doubled, 5, 5)  # tracked edge: the simple spoke (0,5)
    assert emb.graph.n == 12 + 5 * 8
    capped = gadget_wheel_caps(emb)
    assert capped.graph.n == emb.graph.n + 8
    assert is_underlying_cubic(capped.graph)
    _assert_regular_connected(capped.graph, 5)


def test_lift_and_admissibility():
    k5 = complete_graph(5)
    h = lift(k5, 0, 1, 2)
    assert h.n == 5
    assert h.m == 9
    assert h.mu(1, 2) == 2
    assert h.degree(0) == 2

    x, y = find_admissible_lifting(k5, 0)
    lifted = lift(k5, 0, x, y)
    rest = [v for v in range(5) if v != 0]
    for i, p in enumerate(rest):
        for q in rest[i + 1:]:
            assert local_edge_connectivity(lifted, p, q) == \
                local_edge_connectivity(k5, p, q)


def test_lift_requires_neighbors():
    g = Multigraph(3, [(0, 1), (0, 1), (1, 2)])
    with pytest.raises(MultigraphError):
        lift(g, 0, 1, 2)  # 2 is not a neighbor of 0


def _planted_example():
    from genfix import planted_3cut_graphs

    return planted_3cut_graphs(1, seed=9)[0]


def test_split_on_3cut_roundtrip():
    g = _planted_example()
    split = split_on_3cut(g, (0, 1, 2))
    assert split.a >= 0 and split.b >= 0 and split.c >= 0
    assert sum(split.n_counts) % 2 == 0
    _assert_regular_connected(split.h1, 5)
    assert split.h2.regularity() == 5
    assert split.liftings == (split.h_prime.degree(split.u) - 5) // 2

    r1 = find_pdpm(split.h1, 5)
    r2 = find_pdpm(split.h2, 5)
    assert r1.found and r2.found
    glued = combine_pdpm(split, r1.witness.matchings, r2.witness.matchings)
    assert check_pdpm(g, glued, 5) is None


def test_split_rejects_bad_cut():
    g = _planted_example()
    with pytest.raises(MultigraphError):
        split_on_3cut(g, (0, 1))  # not three vertices
    with pytest.raises(MultigraphError):
        split_on_3cut(g, (0, 1, 3))  # 3 is interior, cut leaves |B| side empty?
