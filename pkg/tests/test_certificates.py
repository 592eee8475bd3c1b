"""Certificate format, claim evaluation, and re-verification."""

import pytest

from pdpm.certificates import (
    Certificate,
    decode_constraints,
    decode_members,
    encode_constraints,
    encode_members,
    evaluate_claim,
    graph_digest,
    make_certificate,
    parse_certificates,
    run_claim,
    verify_certificate,
    write_certificates,
)
from pdpm.connectivity import ResourceError
from pdpm.cubic import find_5cdc, find_bf_cover, find_special_2factor, fr_pipeline
from pdpm.matching import Budget, enumerate_perfect_matchings, find_pdpm
from pdpm.multigraph import MultigraphError, ParseError, complete_graph, cycle_graph
from pdpm.petersen import petersen


def test_graph_digest():
    a = petersen()
    b = petersen()
    assert graph_digest(a) == graph_digest(b)
    assert graph_digest(a) != graph_digest(complete_graph(4))
    assert len(graph_digest(a)) == 64


def test_member_encoding_roundtrip():
    members = (frozenset({3, 1, 2}), frozenset(), frozenset({0}))
    text = encode_members(members)
    assert text == "1,2,3;~;0"
    assert decode_members(text) == members
    assert encode_members(()) == "-"
    assert decode_members("-") == ()
    with pytest.raises(MultigraphError):
        decode_members("1,2;;3")


def test_constraint_encoding():
    text = encode_constraints(contain=(5, 1), avoid=(2,), slots={4: 0})
    assert text == "contain=1,5;avoid=2;slots=4:0"
    contain, avoid, slots = decode_constraints(text)
    assert contain == (1, 5)
    assert avoid == (2,)
    assert slots == {4: 0}
    # unknown keys pass through silently (used for line=, via=, reason=)
    assert decode_constraints("line=7;via=pipeline") == ((), (), {})
    assert encode_constraints() == "-"
    with pytest.raises(MultigraphError):
        decode_constraints("notakeyvalue")


def test_certificate_text_roundtrip():
    g = petersen()
    cert = make_certificate(
        g, "regular:3", "verified", witness="-", detail="-", nodes=17,
        wall_seconds=0.25,
    )
    parsed = parse_certificates(cert.to_text())
    assert parsed == [cert]

    other = make_certificate(g, "pdpm:2", "failed", witness="0,1;2,3")
    both = parse_certificates(write_certificates([cert, other]))
    assert both == [cert, other]


def test_parse_rejects_malformed():
    g = petersen()
    text = make_certificate(g, "regular:3", "verified").to_text()

    with pytest.raises(ParseError):
        parse_certificates(text.replace("pdpm-certificate 1", "pdpm-certificate 9"))
    with pytest.raises(ParseError):
        # drop a field line
        parse_certificates("\n".join(text.splitlines()[:-1]) + "\n")
    lines = text.splitlines()
    lines[1], lines[2] = lines[2], lines[1]  # field order is strict
    with pytest.raises(ParseError):
        parse_certificates("\n".join(lines) + "\n")
    with pytest.raises(ParseError):
        parse_certificates(text.replace("verified: true", "verified: false"))
    with pytest.raises(ParseError):
        parse_certificates(text.replace("nodes: 0", "nodes: many"))
    with pytest.raises(ParseError):
        parse_certificates(text.replace("status: verified", "status: maybe"))
    with pytest.raises(MultigraphError):
        make_certificate(g, "regular:3", "maybe")


def test_structural_claims():
    p = petersen()
    assert evaluate_claim(p, "regular:3") is None
    assert "regularity is 3" in evaluate_claim(p, "regular:4")
    assert evaluate_claim(p, "edge-connectivity>=3") is None
    assert "edge connectivity" in evaluate_claim(p, "edge-connectivity>=4")
    assert evaluate_claim(p, "r-graph:3") is None
    assert evaluate_claim(p, "3-connected") is None
    assert evaluate_claim(p, "cyclic-edge-connectivity>=5") is None
    assert evaluate_claim(p, "cyclic-edge-connectivity>=6") is not None
    assert "unknown claim" in evaluate_claim(p, "sturdy:9")

    c6 = cycle_graph(6)
    assert "vertex cut" in evaluate_claim(c6, "3-connected")
    doubled = complete_graph(2)
    assert evaluate_claim(p, "underlying-cubic") is None
    assert evaluate_claim(doubled, "underlying-cubic") is not None


def test_pdpm_claims():
    k4 = complete_graph(4)
    res = find_pdpm(k4, 3)
    assert res.found
    payload = encode_members(res.witness.matchings)
    assert evaluate_claim(k4, "pdpm:3", payload) is None
    assert "matchings" in evaluate_claim(k4, "pdpm:4", payload)
    # tamper: duplicate one member
    mats = res.witness.matchings
    bad = encode_members((mats[0],) * 2 + (mats[1],))
    assert evaluate_claim(k4, "pdpm:3", bad) is not None

    p = petersen()
    assert evaluate_claim(p, "no-pdpm:2") is None  # any two matchings share an edge
    assert "exists" in evaluate_claim(k4, "no-pdpm:3")
    with pytest.raises(ResourceError):
        evaluate_claim(p, "no-pdpm:2", budget=Budget(max_nodes=1))


def test_pdpm_claim_with_constraints():
    k4 = complete_graph(4)
    res = find_pdpm(k4, 2, contain=(0,))
    assert res.found
    payload = encode_members(res.witness.matchings)
    detail = encode_constraints(contain=(0,))
    assert evaluate_claim(k4, "pdpm:2", payload, detail) is None
    bad_detail = encode_constraints(contain=(0,), avoid=(0,))
    assert evaluate_claim(k4, "pdpm:2", payload, bad_detail) is not None


def test_cubic_claims():
    p = petersen()
    triple = fr_pipeline(p, 0, 1)
    payload = encode_members(triple.matchings)
    assert evaluate_claim(p, "fr-triple", payload) is None
    assert evaluate_claim(p, "fr-triple:edge=0,nu=1", payload) is None
    assert "load" in evaluate_claim(p, "fr-triple:edge=0,nu=2", payload)

    bf = find_bf_cover(p)
    assert evaluate_claim(p, "bf-cover", encode_members(bf.witness.matchings)) is None
    cdc = find_5cdc(p)
    assert evaluate_claim(p, "cdc5", encode_members(cdc.witness.members)) is None

    tf = find_special_2factor(p, pair=(0, 1))
    payload = encode_members([tf.witness])
    assert evaluate_claim(p, "special-2factor", payload) is None
    assert evaluate_claim(p, "special-2factor:pair=0,1", payload) is None
    pm = enumerate_perfect_matchings(p)[0]
    assert evaluate_claim(p, "special-2factor", encode_members([pm])) is not None


def test_verify_certificate_semantics():
    p = petersen()
    k4 = complete_graph(4)
    good = run_claim(p, "regular:3")
    assert good.verified
    assert verify_certificate(p, good) is None
    assert "digest mismatch" in verify_certificate(k4, good)

    budget_cert = make_certificate(p, "pdpm:2", "budget")
    assert "asserts nothing" in verify_certificate(p, budget_cert)

    failed = run_claim(p, "regular:4")
    assert failed.status == "failed"
    assert "reason=" in failed.detail
    assert verify_certificate(p, failed) is None  # failure is reproducible

    lying = make_certificate(p, "regular:3", "failed")
    assert "although" in verify_certificate(p, lying)


def test_run_claim_determinism():
    p = petersen()
    a = run_claim(p, "r-graph:3").to_text()
    b = run_claim(p, "r-graph:3").to_text()
    strip = lambda t: [ln for ln in t.splitlines() if not ln.startswith("wall-seconds")]
    assert strip(a) == strip(b)
