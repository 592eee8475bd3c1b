"""Command line surface.

Subcommands: build named constructions, verify graph properties, search
for k-PDPMs, run the cubic reductions, hunt over graph6 streams, and
re-check previously issued certificates.

Exit codes: 0 all claims verified, 1 a claim definitively failed,
2 budget exhausted, 3 input error.  PDPM_BUDGET sets the default search
budget, PDPM_WORKERS the hunt worker count.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import os
import sys
import time
from pathlib import Path

from . import constructions, cubic
from .certificates import (
    BUDGET,
    FAILED,
    VERIFIED,
    Certificate,
    encode_constraints,
    encode_members,
    make_certificate,
    parse_certificates,
    run_claim,
    verify_certificate,
    write_certificates,
)
from .connectivity import ResourceError, edge_connectivity
from .matching import Budget, find_pdpm
from .multigraph import (
    Multigraph,
    MultigraphError,
    ParseError,
    Provenance,
    parse_graph6,
    read_multigraph,
    write_multigraph,
)
from .petersen import build_stack, petersen

PROV_VERSION = 1

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BUDGET = 2
EXIT_INPUT = 3


def _err(msg: str) -> None:
    print(f"pdpm: {msg}", file=sys.stderr)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def load_graph(path: str) -> Multigraph:
    """Read one graph from an mgf document or a graph6/sparse6 line."""
    text = _read_text(path)
    for raw in text.splitlines():
        ln = raw.strip()
        if not ln or ln.startswith("#"):
            continue
        if ln.startswith("mgf"):
            return read_multigraph(text)
        return parse_graph6(ln)
    raise ParseError("no graph in input", 1)


def parse_budget(text: str | None) -> Budget | None:
    """'25000' caps nodes, '90s'/'15m'/'1h' caps wall time, 'none' lifts
    the cap.  Comma-separated parts combine.  Falls back to PDPM_BUDGET.
    """
    if text is None:
        text = os.environ.get("PDPM_BUDGET")
    if text is None:
        return None
    text = text.strip().lower()
    if not text or text == "none":
        return None
    nodes = None
    seconds = None
    for part in text.split(","):
        part = part.strip()
        if part[-1:] in ("s", "m", "h"):
            scale = {"s": 1.0, "m": 60.0, "h": 3600.0}[part[-1]]
            seconds = float(part[:-1]) * scale
        else:
            nodes = int(part)
    return Budget(max_nodes=nodes, max_seconds=seconds)


def _worker_count(arg: int | None) -> int:
    if arg is not None:
        return max(1, arg)
    env = os.environ.get("PDPM_WORKERS")
    return max(1, int(env)) if env else 1


# -- build -------------------------------------------------------------------


def _provenance_text(source: str, out: Multigraph, prov: Provenance | None,
                     designated=None, marked=None, copies=None) -> str:
    from .certificates import graph_digest

    lines = [f"prov {PROV_VERSION}", f"source {source}",
             f"graph-sha256 {graph_digest(out)}"]
    for name in sorted(marked or {}):
        lines.append(f"mark {name} {marked[name]}")
    for name in sorted(designated or {}):
        ids = ",".join(str(i) for i in designated[name])
        lines.append(f"designate {name} {ids}")
    for name in sorted(copies or {}):
        c = copies[name]
        vs = ",".join(f"{s}:{o}" for s, o in sorted(c.vertices.items()))
        es = ",".join(f"{o}:{s}" for o, s in sorted(c.edges.items()))
        bs = ",".join(f"{o}:{s}" for o, s in sorted(c.boundary.items()))
        ts = ",".join(f"{k}:{v}" for k, v in sorted(c.tracked.items()))
        lines.append(
            f"copy {name} replaced={c.replaced} vertices={vs or '-'} "
            f"edges={es or '-'} boundary={bs or '-'} tracked={ts or '-'}"
        )
    if prov is not None:
        for v in sorted(prov.vertices):
            tag, src = prov.vertices[v]
            lines.append(f"v {v} {tag} {src}")
        for e in sorted(prov.edges):
            tag, src = prov.edges[e]
            lines.append(f"e {e} {tag} {src}")
    return "\n".join(lines) + "\n"


BUILD_NAMES = (
    "p_k", "q_k", "s_k", "g_k",
    "gadget-cycle", "gadget-k4", "gadget-halfstar",
    "wheel-blowup", "k-gadget-blowup",
    "petersen", "p-plus-matchings",
)


def _build_object(args):
    """Returns (graph, provenance or None, gadget output or None, source tag)."""
    name = args.name
    if name in ("p_k", "q_k", "s_k", "g_k"):
        k = args.k
        if k is None or k < 1:
            raise MultigraphError(f"{name} needs --k >= 1")
        if name == "p_k":
            return constructions.build_Pk(k), None, None, f"p_k k={k}"
        if name == "s_k":
            return constructions.build_Sk(k), None, None, f"s_k k={k}"
        built = constructions.build_Qk(k) if name == "q_k" else constructions.build_Gk(k)
        return built.graph, built.provenance, built, f"{name} k={k}"
    if name in ("gadget-cycle", "gadget-k4"):
        r = args.r
        if r is None or r < 3:
            raise MultigraphError(f"{name} needs --r >= 3")
        built = (constructions.gadget_cycle(r) if name == "gadget-cycle"
                 else constructions.gadget_k4(r))
        return built.graph, built.provenance, built, f"{name} r={r}"
    if name == "gadget-halfstar":
        if args.graph is None or args.vertex is None or args.k is None:
            raise MultigraphError("gadget-halfstar needs --graph, --vertex and --k")
        g = load_graph(args.graph)
        built = constructions.gadget_halfstar(g, args.vertex, args.k)
        return built.graph, built.provenance, built, \
            f"gadget-halfstar v={args.vertex} k={args.k} over {args.graph}"
    if name in ("wheel-blowup", "k-gadget-blowup"):
        if args.graph is None:
            raise MultigraphError(f"{name} needs --graph")
        g = load_graph(args.graph)
        built = (cubic.wheel_blowup(g) if name == "wheel-blowup"
                 else cubic.k_gadget_blowup(g))
        return built.graph, built.provenance, built, f"{name} over {args.graph}"
    if name == "petersen":
        return petersen(), None, None, "petersen"
    if name == "p-plus-matchings":
        if not args.types:
            raise MultigraphError("p-plus-matchings needs --types")
        types = tuple(int(t) for t in args.types.split(","))
        g, prov = build_stack(types)
        joined = ",".join(str(t) for t in types)
        return g, prov, None, f"p-plus-matchings types={joined}"
    raise MultigraphError(f"unknown build name: {name}")


def _default_prefix(args) -> str:
    name = args.name
    if name in ("p_k", "q_k", "s_k", "g_k", "gadget-halfstar"):
        return f"{name}-{args.k}"
    if name in ("gadget-cycle", "gadget-k4"):
        return f"{name}-{args.r}"
    if name == "p-plus-matchings":
        return "p-plus-" + "".join(args.types.split(","))
    return name


def cmd_build(args) -> int:
    try:
        g, prov, built, source = _build_object(args)
    except (MultigraphError, ParseError, OSError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    prefix = args.out or _default_prefix(args)
    designated = built.designated if built else None
    marked = built.marked if built else None
    copies = built.copies if built else None
    graph_path = Path(prefix + ".mgf")
    prov_path = Path(prefix + ".prov")
    graph_path.write_text(write_multigraph(g))
    prov_path.write_text(
        _provenance_text(source, g, prov, designated, marked, copies)
    )
    print(f"wrote {graph_path} ({g.n} vertices, {g.m} edge instances)")
    print(f"wrote {prov_path}")
    return EXIT_OK


# -- verify ------------------------------------------------------------------


def claim_for_check(check: str) -> str:
    name, _, arg = check.partition(":")
    numeric = {
        "regular": "regular:{}",
        "edge-conn": "edge-connectivity>={}",
        "r-graph": "r-graph:{}",
        "cyclic-edge-conn": "cyclic-edge-connectivity>={}",
    }
    if name in numeric:
        if not arg or not arg.isdigit():
            raise MultigraphError(f"check {name!r} needs a numeric argument")
        return numeric[name].format(int(arg))
    if check in ("3-connected", "underlying-cubic"):
        return check
    raise MultigraphError(f"unknown check: {check!r}")


def _emit(certs, out_path: str | None) -> None:
    text = write_certificates(certs)
    if out_path:
        Path(out_path).write_text(text)
    print(text, end="")


def cmd_verify(args) -> int:
    try:
        g = load_graph(args.graph)
        claims = [claim_for_check(c) for c in args.check]
    except (MultigraphError, ParseError, OSError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    certs = []
    for claim in claims:
        try:
            certs.append(run_claim(g, claim))
        except ResourceError as exc:
            _err(str(exc))
            return EXIT_BUDGET
        except MultigraphError as exc:
            _err(f"check {claim!r}: {exc}")
            return EXIT_INPUT
    _emit(certs, args.out)
    return EXIT_OK if all(c.verified for c in certs) else EXIT_FAILED


# -- pdpm ----------------------------------------------------------------------


def _ids(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    return tuple(int(x) for x in text.split(","))


def cmd_pdpm(args) -> int:
    try:
        g = load_graph(args.graph)
        contain = _ids(args.contain)
        avoid = _ids(args.avoid)
        slots = {}
        for item in args.slot or ():
            e, _, i = item.partition(":")
            slots[int(e)] = int(i)
        budget = parse_budget(args.budget)
    except (MultigraphError, ParseError, OSError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    detail = encode_constraints(contain, avoid, slots)
    t0 = time.perf_counter()
    try:
        res = find_pdpm(g, args.k, contain, avoid, slots or None, budget)
    except MultigraphError as exc:
        _err(str(exc))
        return EXIT_INPUT
    wall = time.perf_counter() - t0
    if res.status == "found":
        cert = make_certificate(
            g, f"pdpm:{args.k}", VERIFIED,
            witness=encode_members(res.witness.matchings),
            detail=detail, nodes=res.nodes, wall_seconds=wall,
        )
        _emit([cert], args.out)
        return EXIT_OK
    if res.status == "none":
        cert = make_certificate(
            g, f"no-pdpm:{args.k}", VERIFIED,
            detail=detail, nodes=res.nodes, wall_seconds=wall,
        )
        _emit([cert], args.out)
        return EXIT_OK
    cert = make_certificate(
        g, f"pdpm:{args.k}", BUDGET,
        detail=detail, nodes=res.nodes, wall_seconds=wall,
    )
    _emit([cert], args.out)
    return EXIT_BUDGET


# -- cubic ---------------------------------------------------------------------


def _search_cert(g, res, claim_yes: str, claim_no: str, detail: str, wall: float,
                 members_of) -> tuple[Certificate, int]:
    if res.status == "found":
        cert = make_certificate(
            g, claim_yes, VERIFIED, witness=encode_members(members_of(res.witness)),
            detail=detail, nodes=res.nodes, wall_seconds=wall,
        )
        return cert, EXIT_OK
    if res.status == "none":
        cert = make_certificate(
            g, claim_no, VERIFIED, detail=detail, nodes=res.nodes, wall_seconds=wall,
        )
        return cert, EXIT_OK
    cert = make_certificate(
        g, claim_yes, BUDGET, detail=detail, nodes=res.nodes, wall_seconds=wall,
    )
    return cert, EXIT_BUDGET


def cmd_cubic(args) -> int:
    try:
        g = load_graph(args.graph)
        budget = parse_budget(args.budget)
    except (MultigraphError, ParseError, OSError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    op = args.op
    t0 = time.perf_counter()
    try:
        if op == "fr":
            suffix = ""
            if args.edge is not None and args.nu is not None:
                suffix = f":edge={args.edge},nu={args.nu}"
            elif args.edge is not None or args.nu is not None:
                raise MultigraphError("fr needs --edge and --nu together")
            res = find_fr(g, args, budget)
            cert, code = _search_cert(
                g, res, "fr-triple" + suffix, "no-fr-triple" + suffix, "-",
                time.perf_counter() - t0, lambda w: w.matchings,
            )
        elif op == "bf":
            res = cubic.find_bf_cover(g, budget)
            cert, code = _search_cert(
                g, res, "bf-cover", "no-bf-cover", "-",
                time.perf_counter() - t0, lambda w: w.matchings,
            )
        elif op == "cdc5":
            res = cubic.find_5cdc(g, budget)
            cert, code = _search_cert(
                g, res, "cdc5", "no-cdc5", "-",
                time.perf_counter() - t0, lambda w: w.members,
            )
        elif op == "two-factor":
            pair = _ids(args.pair) or None
            suffix = f":pair={pair[0]},{pair[1]}" if pair else ""
            res = cubic.find_special_2factor(g, pair, budget)
            cert, code = _search_cert(
                g, res, "special-2factor" + suffix, "no-special-2factor" + suffix,
                "-", time.perf_counter() - t0, lambda w: (w,),
            )
        elif op == "fr-pipeline":
            if args.edge is None or args.nu is None:
                raise MultigraphError("fr-pipeline needs --edge and --nu")
            try:
                triple = cubic.fr_pipeline(g, args.edge, args.nu, budget)
            except ResourceError:
                raise
            except MultigraphError as exc:
                _err(f"pipeline failed: {exc}")
                return EXIT_FAILED
            cert = make_certificate(
                g, f"fr-triple:edge={args.edge},nu={args.nu}", VERIFIED,
                witness=encode_members(triple.matchings),
                detail=encode_constraints(extra={"via": "pipeline"}),
                wall_seconds=time.perf_counter() - t0,
            )
            code = EXIT_OK
        else:
            raise MultigraphError(f"unknown cubic operation: {op}")
    except ResourceError as exc:
        _err(str(exc))
        return EXIT_BUDGET
    except MultigraphError as exc:
        _err(str(exc))
        return EXIT_INPUT
    _emit([cert], args.out)
    return code


def find_fr(g, args, budget):
    return cubic.find_fr_triple(g, args.edge, args.nu, budget)


# -- hunt ----------------------------------------------------------------------


def _hunt_one(job):
    """(lineno, line, r, budget) -> (lineno, bucket, certificate text or None)."""
    lineno, line, r, budget = job
    try:
        g = parse_graph6(line)
    except (ParseError, MultigraphError) as exc:
        return lineno, "malformed", str(exc)
    if g.regularity() != r:
        return lineno, "not-regular", None
    lam, _ = edge_connectivity(g)
    if lam < r:
        return lineno, "not-connected", None
    detail = encode_constraints(extra={"line": str(lineno)})
    t0 = time.perf_counter()
    res = find_pdpm(g, r, budget=budget)
    wall = time.perf_counter() - t0
    if res.status == "found":
        cert = make_certificate(
            g, f"pdpm:{r}", VERIFIED, witness=encode_members(res.witness.matchings),
            detail=detail, nodes=res.nodes, wall_seconds=wall,
        )
        return lineno, "class1", cert.to_text()
    if res.status == "none":
        cert = make_certificate(
            g, f"no-pdpm:{r}", VERIFIED, detail=detail, nodes=res.nodes,
            wall_seconds=wall,
        )
        return lineno, "class2", cert.to_text()
    cert = make_certificate(
        g, f"pdpm:{r}", BUDGET, detail=detail, nodes=res.nodes, wall_seconds=wall,
    )
    return lineno, "indeterminate", cert.to_text()


def cmd_hunt(args) -> int:
    try:
        text = _read_text(args.stream)
        budget = parse_budget(args.budget_per_graph)
    except (OSError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    jobs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        ln = raw.strip()
        if ln:
            jobs.append((lineno, ln, args.r, budget))
    workers = _worker_count(args.workers)
    if workers > 1 and len(jobs) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_hunt_one, jobs, chunksize=16))
    else:
        results = [_hunt_one(job) for job in jobs]

    counts = {"scanned": 0, "regular": 0, "connected-enough": 0,
              "class1": 0, "class2": 0, "indeterminate": 0}
    malformed: list[tuple[int, str]] = []
    cert_blocks: list[str] = []
    for lineno, bucket, payload in results:
        if bucket == "malformed":
            malformed.append((lineno, payload))
            continue
        counts["scanned"] += 1
        if bucket == "not-regular":
            continue
        counts["regular"] += 1
        if bucket == "not-connected":
            continue
        counts["connected-enough"] += 1
        counts[bucket] += 1
        cert_blocks.append(payload)
        if bucket == "class2":
            banner = f"!! class 2 candidate at input line {lineno}"
            print(banner)
            print(payload, end="")
            print(banner, file=sys.stderr)

    if args.report:
        Path(args.report).write_text("\n".join(cert_blocks))
    for key in ("scanned", "regular", "connected-enough",
                "class1", "class2", "indeterminate"):
        print(f"{key}: {counts[key]}")
    if malformed:
        lines = ",".join(str(no) for no, _ in malformed)
        print(f"malformed: {len(malformed)} (lines {lines})")
        for no, msg in malformed:
            print(f"  line {no}: {msg}", file=sys.stderr)
    else:
        print("malformed: 0")
    return EXIT_BUDGET if counts["indeterminate"] else EXIT_OK


# -- verify-certificate ----------------------------------------------------------


def cmd_verify_certificate(args) -> int:
    try:
        g = load_graph(args.graph)
        certs = parse_certificates(_read_text(args.certificates))
        budget = parse_budget(args.budget)
    except (MultigraphError, ParseError, OSError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    if not certs:
        _err("no certificate blocks in input")
        return EXIT_INPUT
    code = EXIT_OK
    for cert in certs:
        try:
            reason = verify_certificate(g, cert, budget)
        except ResourceError as exc:
            print(f"budget {cert.claim}: {exc}")
            return EXIT_BUDGET
        if reason is None:
            print(f"ok {cert.claim}")
        else:
            print(f"FAIL {cert.claim}: {reason}")
            code = EXIT_FAILED
    return code


# -- entry ----------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pdpm",
        description="Disjoint perfect matchings: constructions, searches, certificates.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a named construction")
    b.add_argument("name", choices=BUILD_NAMES)
    b.add_argument("--k", type=int, default=None)
    b.add_argument("--r", type=int, default=None)
    b.add_argument("--types", default=None, help="comma list for p-plus-matchings")
    b.add_argument("--graph", default=None, help="input graph file where needed")
    b.add_argument("--vertex", type=int, default=None)
    b.add_argument("--out", default=None, help="output prefix")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="check properties, emit certificates")
    v.add_argument("graph")
    v.add_argument("--check", action="append", required=True,
                   help="regular:R | edge-conn:R | r-graph:R | 3-connected"
                        " | underlying-cubic | cyclic-edge-conn:K")
    v.add_argument("--out", default=None, help="also write certificates here")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("pdpm", help="search for k disjoint perfect matchings")
    m.add_argument("graph")
    m.add_argument("k", type=int)
    m.add_argument("--contain", default=None, help="edge ids every run must honor")
    m.add_argument("--avoid", default=None, help="edge ids no matching may use")
    m.add_argument("--slot", action="append", default=None, metavar="E:I",
                   help="pin edge E into matching number I")
    m.add_argument("--budget", default=None)
    m.add_argument("--out", default=None)
    m.set_defaults(func=cmd_pdpm)

    c = sub.add_parser("cubic", help="matching covers of cubic graphs")
    c.add_argument("op", choices=("fr", "bf", "cdc5", "two-factor", "fr-pipeline"))
    c.add_argument("graph")
    c.add_argument("--edge", type=int, default=None)
    c.add_argument("--nu", type=int, default=None)
    c.add_argument("--pair", default=None, metavar="A,B")
    c.add_argument("--budget", default=None)
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_cubic)

    h = sub.add_parser("hunt", help="classify a graph6 stream by chromatic class")
    h.add_argument("stream", nargs="?", default="-",
                   help="graph6 lines, file or - for standard input")
    h.add_argument("--r", type=int, default=5)
    h.add_argument("--budget-per-graph", default=None)
    h.add_argument("--report", default=None, help="write per-graph certificates here")
    h.add_argument("--workers", type=int, default=None)
    h.set_defaults(func=cmd_hunt)

    vc = sub.add_parser("verify-certificate", help="re-check issued certificates")
    vc.add_argument("graph")
    vc.add_argument("certificates")
    vc.add_argument("--budget", default=None)
    vc.set_defaults(func=cmd_verify_certificate)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
