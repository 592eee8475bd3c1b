"""End-to-end command line behavior through main(argv)."""

import os

import pytest

from pdpm.certificates import parse_certificates
from pdpm.cli import EXIT_BUDGET, EXIT_FAILED, EXIT_INPUT, EXIT_OK, main, parse_budget
from pdpm.multigraph import (
    Multigraph,
    complete_graph,
    cycle_graph,
    read_multigraph,
    write_graph6,
    write_multigraph,
)
from pdpm.petersen import petersen


def graph_file(tmp_path, g, name="g.mgf"):
    path = tmp_path / name
    path.write_text(write_multigraph(g))
    return str(path)


def strip_wall(text: str) -> list[str]:
    return [ln for ln in text.splitlines() if not ln.startswith("wall-seconds")]


# -- budgets -------------------------------------------------------------------


def test_parse_budget(monkeypatch):
    monkeypatch.delenv("PDPM_BUDGET", raising=False)
    assert parse_budget(None) is None
    assert parse_budget("none") is None
    b = parse_budget("25000")
    assert b.max_nodes == 25000 and b.max_seconds is None
    assert parse_budget("90s").max_seconds == 90.0
    assert parse_budget("15m").max_seconds == 900.0
    assert parse_budget("1h").max_seconds == 3600.0
    both = parse_budget("500,2s")
    assert both.max_nodes == 500 and both.max_seconds == 2.0
    monkeypatch.setenv("PDPM_BUDGET", "77")
    assert parse_budget(None).max_nodes == 77


# -- build ---------------------------------------------------------------------


def test_build_is_byte_deterministic(tmp_path, capsys):
    prefix = str(tmp_path / "pet")
    assert main(["build", "petersen", "--out", prefix]) == EXIT_OK
    first_mgf = (tmp_path / "pet.mgf").read_bytes()
    first_prov = (tmp_path / "pet.prov").read_bytes()
    assert main(["build", "petersen", "--out", prefix]) == EXIT_OK
    assert (tmp_path / "pet.mgf").read_bytes() == first_mgf
    assert (tmp_path / "pet.prov").read_bytes() == first_prov

    g = read_multigraph(first_mgf.decode())
    assert g.n == 10 and g.m == 15
    prov = first_prov.decode().splitlines()
    assert prov[0] == "prov 1"
    assert prov[1] == "source petersen"
    assert prov[2].startswith("graph-sha256 ")


def test_build_stack_and_gadget(tmp_path, capsys):
    prefix = str(tmp_path / "stack")
    assert main(["build", "p-plus-matchings", "--types", "0,1",
                 "--out", prefix]) == EXIT_OK
    g = read_multigraph((tmp_path / "stack.mgf").read_text())
    assert g.n == 10 and g.m == 25
    prov = (tmp_path / "stack.prov").read_text()
    assert "source p-plus-matchings types=0,1" in prov
    assert any(ln.startswith("e ") for ln in prov.splitlines())

    prefix = str(tmp_path / "gc")
    assert main(["build", "gadget-cycle", "--r", "5", "--out", prefix]) == EXIT_OK
    g = read_multigraph((tmp_path / "gc.mgf").read_text())
    assert g.n == 12
    prov = (tmp_path / "gc.prov").read_text()
    assert "mark u " in prov and "mark u_prime " in prov


def test_build_bad_args(tmp_path, capsys):
    assert main(["build", "p_k"]) == EXIT_INPUT  # --k missing
    assert main(["build", "gadget-cycle", "--r", "2"]) == EXIT_INPUT
    assert main(["build", "p-plus-matchings"]) == EXIT_INPUT
    err = capsys.readouterr().err
    assert "pdpm:" in err


# -- verify ----------------------------------------------------------------------


def test_verify_passes(tmp_path, capsys):
    path = graph_file(tmp_path, petersen())
    out = str(tmp_path / "certs.txt")
    code = main(["verify", path, "--check", "regular:3", "--check", "edge-conn:3",
                 "--check", "3-connected", "--check", "underlying-cubic",
                 "--check", "cyclic-edge-conn:5", "--check", "r-graph:3",
                 "--out", out])
    assert code == EXIT_OK
    certs = parse_certificates((tmp_path / "certs.txt").read_text())
    assert len(certs) == 6
    assert all(c.verified for c in certs)
    assert capsys.readouterr().out.count("pdpm-certificate 1") == 6


def test_verify_failure_and_bad_check(tmp_path, capsys):
    path = graph_file(tmp_path, petersen())
    assert main(["verify", path, "--check", "regular:4"]) == EXIT_FAILED
    certs = parse_certificates(capsys.readouterr().out)
    assert certs[0].status == "failed"
    assert "reason=" in certs[0].detail

    assert main(["verify", path, "--check", "sturdiness:9"]) == EXIT_INPUT
    assert main(["verify", str(tmp_path / "absent.mgf"),
                 "--check", "regular:3"]) == EXIT_INPUT


# -- pdpm ------------------------------------------------------------------------


def test_pdpm_found(tmp_path, capsys):
    path = graph_file(tmp_path, complete_graph(4))
    assert main(["pdpm", path, "3"]) == EXIT_OK
    cert = parse_certificates(capsys.readouterr().out)[0]
    assert cert.claim == "pdpm:3"
    assert cert.verified
    assert cert.witness.count(";") == 2


def test_pdpm_none_and_budget(tmp_path, capsys):
    path = graph_file(tmp_path, petersen())
    assert main(["pdpm", path, "2"]) == EXIT_OK
    cert = parse_certificates(capsys.readouterr().out)[0]
    assert cert.claim == "no-pdpm:2"
    assert cert.verified

    assert main(["pdpm", path, "2", "--budget", "1"]) == EXIT_BUDGET
    cert = parse_certificates(capsys.readouterr().out)[0]
    assert cert.claim == "pdpm:2"
    assert cert.status == "budget"


def test_pdpm_constraints(tmp_path, capsys):
    path = graph_file(tmp_path, complete_graph(4))
    assert main(["pdpm", path, "2", "--contain", "0", "--slot", "0:0"]) == EXIT_OK
    cert = parse_certificates(capsys.readouterr().out)[0]
    assert "contain=0" in cert.detail and "slots=0:0" in cert.detail
    # adjacent edges pinned to one matching cannot normalize
    assert main(["pdpm", path, "2", "--slot", "0:0", "--slot", "1:0"]) == EXIT_INPUT


# -- cubic -----------------------------------------------------------------------


def test_cubic_ops(tmp_path, capsys):
    pet = graph_file(tmp_path, petersen())
    k4 = graph_file(tmp_path, complete_graph(4), "k4.mgf")

    assert main(["cubic", "fr", pet, "--edge", "0", "--nu", "1"]) == EXIT_OK
    cert = parse_certificates(capsys.readouterr().out)[0]
    assert cert.claim == "fr-triple:edge=0,nu=1"

    assert main(["cubic", "two-factor", pet, "--pair", "0,1"]) == EXIT_OK
    cert = parse_certificates(capsys.readouterr().out)[0]
    assert cert.claim == "special-2factor:pair=0,1"

    assert main(["cubic", "bf", pet]) == EXIT_OK
    cert = parse_certificates(capsys.readouterr().out)[0]
    assert cert.claim == "bf-cover"

    assert main(["cubic", "cdc5", k4]) == EXIT_OK
    cert = parse_certificates(capsys.readouterr().out)[0]
    assert cert.claim == "cdc5"
    assert "~" in cert.witness  # short covers pad with empty members


def test_cubic_pipeline(tmp_path, capsys):
    pet = graph_file(tmp_path, petersen())
    assert main(["cubic", "fr-pipeline", pet, "--edge", "0", "--nu", "2"]) == EXIT_OK
    cert = parse_certificates(capsys.readouterr().out)[0]
    assert cert.claim == "fr-triple:edge=0,nu=2"
    assert "via=pipeline" in cert.detail

    assert main(["cubic", "fr-pipeline", pet, "--edge", "0"]) == EXIT_INPUT

    # lambda = 2, the precondition stage refuses
    twocut = Multigraph(8, [
        (0, 1), (0, 2), (0, 3), (1, 2), (1, 3),
        (4, 5), (4, 6), (4, 7), (5, 6), (5, 7), (2, 6), (3, 7),
    ])
    path = graph_file(tmp_path, twocut, "twocut.mgf")
    code = main(["cubic", "fr-pipeline", path, "--edge", "0", "--nu", "1"])
    assert code == EXIT_FAILED
    assert "pipeline failed" in capsys.readouterr().err


# -- hunt ------------------------------------------------------------------------


def hunt_stream(tmp_path) -> str:
    lines = [
        write_graph6(complete_graph(4)),   # class 1 at r=3
        write_graph6(petersen()),          # class 2 at r=3
        "!!notgraph6!!",
        write_graph6(cycle_graph(6)),      # 2-regular, skipped
    ]
    path = tmp_path / "stream.g6"
    path.write_text("\n".join(lines) + "\n")
    return str(path)


def test_hunt_classifies(tmp_path, capsys):
    stream = hunt_stream(tmp_path)
    report = str(tmp_path / "report.txt")
    code = main(["hunt", stream, "--r", "3", "--report", report])
    assert code == EXIT_OK
    out, err = capsys.readouterr()
    assert "scanned: 3" in out
    assert "regular: 2" in out
    assert "connected-enough: 2" in out
    assert "class1: 1" in out
    assert "class2: 1" in out
    assert "indeterminate: 0" in out
    assert "malformed: 1 (lines 3)" in out
    assert "!! class 2 candidate at input line 2" in out
    assert "!! class 2 candidate at input line 2" in err
    certs = parse_certificates((tmp_path / "report.txt").read_text())
    assert {c.claim for c in certs} == {"pdpm:3", "no-pdpm:3"}
    assert all("line=" in c.detail for c in certs)


def test_hunt_worker_determinism(tmp_path, capsys):
    stream = hunt_stream(tmp_path)
    rep1 = str(tmp_path / "r1.txt")
    rep2 = str(tmp_path / "r2.txt")
    assert main(["hunt", stream, "--r", "3", "--report", rep1,
                 "--workers", "1"]) == EXIT_OK
    out1 = capsys.readouterr().out
    assert main(["hunt", stream, "--r", "3", "--report", rep2,
                 "--workers", "2"]) == EXIT_OK
    out2 = capsys.readouterr().out
    assert strip_wall(out1) == strip_wall(out2)
    assert strip_wall((tmp_path / "r1.txt").read_text()) == \
        strip_wall((tmp_path / "r2.txt").read_text())


def test_hunt_budget_and_missing_input(tmp_path, capsys):
    path = tmp_path / "one.g6"
    path.write_text(write_graph6(petersen()) + "\n")
    code = main(["hunt", str(path), "--r", "3", "--budget-per-graph", "1"])
    assert code == EXIT_BUDGET
    assert "indeterminate: 1" in capsys.readouterr().out
    assert main(["hunt", str(tmp_path / "nope.g6")]) == EXIT_INPUT


# -- verify-certificate ------------------------------------------------------------


def test_verify_certificate_roundtrip(tmp_path, capsys):
    pet = graph_file(tmp_path, petersen())
    assert main(["pdpm", pet, "2", "--out", str(tmp_path / "c.txt")]) == EXIT_OK
    capsys.readouterr()
    assert main(["verify-certificate", pet, str(tmp_path / "c.txt")]) == EXIT_OK
    assert "ok no-pdpm:2" in capsys.readouterr().out

    # re-checking the refutation under a tiny budget stays undecided
    code = main(["verify-certificate", pet, str(tmp_path / "c.txt"),
                 "--budget", "1"])
    assert code == EXIT_BUDGET

    k4 = graph_file(tmp_path, complete_graph(4), "k4.mgf")
    assert main(["verify-certificate", k4, str(tmp_path / "c.txt")]) == EXIT_FAILED
    assert "digest mismatch" in capsys.readouterr().out

    (tmp_path / "empty.txt").write_text("\n")
    assert main(["verify-certificate", pet,
                 str(tmp_path / "empty.txt")]) == EXIT_INPUT


def test_verify_certificate_tamper(tmp_path, capsys):
    k4 = graph_file(tmp_path, complete_graph(4))
    assert main(["pdpm", k4, "3", "--out", str(tmp_path / "c.txt")]) == EXIT_OK
    capsys.readouterr()
    text = (tmp_path / "c.txt").read_text()
    # move edge 0 into the second matching: duplicates break disjointness
    swapped = text.replace("witness: 0,", "witness: 1,", 1)
    assert swapped != text
    (tmp_path / "bad.txt").write_text(swapped)
    assert main(["verify-certificate", k4, str(tmp_path / "bad.txt")]) == EXIT_FAILED
    assert "FAIL pdpm:3" in capsys.readouterr().out
