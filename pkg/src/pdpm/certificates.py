"""Verifiable claim documents tied to one multigraph.

A certificate is a small line-delimited text block: a claim tag, the
sha256 of the graph document it speaks about, a status, an optional
witness payload, and engine counters.  Re-verification uses only the
graph document and the payload and never trusts the engine that issued
the block.  Negative claims (no-pdpm, no-bf-cover, ...) carry no
witness; re-checking them repeats the exhaustive search, so it can cost
as much as the original run.

Claim tags:

    regular:<r>                      every degree equals r
    edge-connectivity>=<r>
    r-graph:<r>                      r-regular and every odd cut >= r
    3-connected
    underlying-cubic
    cyclic-edge-connectivity>=<k>    cubic inputs only
    pdpm:<k>                         witness = k disjoint perfect matchings
    no-pdpm:<k>                      exhaustive refutation
    fr-triple[:edge=<e>,nu=<i>]      witness = 3 matchings, loads <= 2
    no-fr-triple[:edge=<e>,nu=<i>]
    bf-cover / no-bf-cover           witness = 6 matchings, loads == 2
    cdc5 / no-cdc5                   witness = 5 even sets, loads == 2
    special-2factor[:pair=<a>,<b>]   witness = 2-factor meeting 3/4-cuts
    no-special-2factor[:pair=<a>,<b>]
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass

from .connectivity import (
    ResourceError,
    cyclic_edge_connectivity_at_least,
    edge_connectivity,
    enumerate_edge_cuts_upto,
    is_r_graph,
    vertex_connectivity_at_least,
)
from .cubic import (
    check_5cdc,
    check_bf_cover,
    check_fr_triple,
    find_5cdc,
    find_bf_cover,
    find_fr_triple,
    find_special_2factor,
    nu_profile,
)
from .matching import Budget, find_pdpm
from .multigraph import (
    Multigraph,
    MultigraphError,
    ParseError,
    is_underlying_cubic,
    write_multigraph,
)
from .verify import check_pdpm

FORMAT_VERSION = 1
_HEADER = f"pdpm-certificate {FORMAT_VERSION}"

VERIFIED = "verified"
FAILED = "failed"
BUDGET = "budget"

# field order is part of the format; parse and emit enforce it
_FIELDS = (
    "claim",
    "graph-sha256",
    "status",
    "verified",
    "witness",
    "detail",
    "seed",
    "nodes",
    "wall-seconds",
)


def graph_digest(g: Multigraph) -> str:
    """sha256 of the serialized multigraph document."""
    return hashlib.sha256(write_multigraph(g).encode("ascii")).hexdigest()


@dataclass(frozen=True)
class Certificate:
    claim: str
    graph_sha256: str
    status: str  # verified | failed | budget
    witness: str = "-"
    detail: str = "-"
    seed: str = "-"
    nodes: int = 0
    wall_seconds: float = 0.0

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED

    def to_text(self) -> str:
        vals = {
            "claim": self.claim,
            "graph-sha256": self.graph_sha256,
            "status": self.status,
            "verified": "true" if self.verified else "false",
            "witness": self.witness,
            "detail": self.detail,
            "seed": self.seed,
            "nodes": str(self.nodes),
            "wall-seconds": f"{self.wall_seconds:.6f}",
        }
        lines = [_HEADER]
        lines.extend(f"{key}: {vals[key]}" for key in _FIELDS)
        return "\n".join(lines) + "\n"


def make_certificate(
    g: Multigraph,
    claim: str,
    status: str,
    witness: str = "-",
    detail: str = "-",
    nodes: int = 0,
    wall_seconds: float = 0.0,
) -> Certificate:
    if status not in (VERIFIED, FAILED, BUDGET):
        raise MultigraphError(f"unknown certificate status: {status}")
    return Certificate(
        claim=claim,
        graph_sha256=graph_digest(g),
        status=status,
        witness=witness,
        detail=detail,
        nodes=nodes,
        wall_seconds=wall_seconds,
    )


def write_certificates(certs) -> str:
    """Concatenate blocks with one blank line between them."""
    return "\n".join(c.to_text() for c in certs)


def parse_certificates(text: str) -> list[Certificate]:
    """Parse one or more blocks.  Field order is strict."""
    certs = []
    block: list[tuple[int, str]] = []
    lines = text.splitlines()
    for lineno, raw in enumerate(lines + [""], start=1):
        ln = raw.strip()
        if ln:
            block.append((lineno, ln))
            continue
        if block:
            certs.append(_parse_block(block))
            block = []
    return certs


def _parse_block(block: list[tuple[int, str]]) -> Certificate:
    lineno, head = block[0]
    if head != _HEADER:
        raise ParseError(f"expected '{_HEADER}', got {head!r}", lineno)
    if len(block) != 1 + len(_FIELDS):
        raise ParseError(
            f"certificate block needs {len(_FIELDS)} field lines, got {len(block) - 1}",
            lineno,
        )
    vals = {}
    for key, (ln_no, ln) in zip(_FIELDS, block[1:]):
        prefix = key + ":"
        if not ln.startswith(prefix):
            raise ParseError(f"expected field {key!r}", ln_no)
        vals[key] = ln[len(prefix):].strip()
    if vals["status"] not in (VERIFIED, FAILED, BUDGET):
        raise ParseError(f"unknown status {vals['status']!r}", lineno)
    flag = "true" if vals["status"] == VERIFIED else "false"
    if vals["verified"] != flag:
        raise ParseError("verified flag disagrees with status", lineno)
    try:
        nodes = int(vals["nodes"])
        wall = float(vals["wall-seconds"])
    except ValueError as exc:
        raise ParseError(f"bad numeric field: {exc}", lineno) from None
    return Certificate(
        claim=vals["claim"],
        graph_sha256=vals["graph-sha256"],
        status=vals["status"],
        witness=vals["witness"],
        detail=vals["detail"],
        seed=vals["seed"],
        nodes=nodes,
        wall_seconds=wall,
    )


# -- payload encodings -----------------------------------------------------


def encode_members(members) -> str:
    """Edge-set list -> 'a,b,c;~;d,e' ('~' marks an empty member)."""
    parts = []
    for m in members:
        ids = sorted(int(x) for x in m)
        parts.append(",".join(str(x) for x in ids) if ids else "~")
    return ";".join(parts) if parts else "-"


def decode_members(payload: str) -> tuple[frozenset, ...]:
    if payload == "-":
        return ()
    out = []
    for part in payload.split(";"):
        if part == "~":
            out.append(frozenset())
            continue
        if not part:
            raise MultigraphError("empty member segment in witness payload")
        out.append(frozenset(int(x) for x in part.split(",")))
    return tuple(out)


def encode_constraints(contain=(), avoid=(), slots=None, extra=None) -> str:
    """Canonical k=v;k=v string.  '-' when everything is empty."""
    parts = []
    if contain:
        parts.append("contain=" + ",".join(str(int(x)) for x in sorted(contain)))
    if avoid:
        parts.append("avoid=" + ",".join(str(int(x)) for x in sorted(avoid)))
    if slots:
        body = ",".join(f"{int(e)}:{int(i)}" for e, i in sorted(slots.items()))
        parts.append("slots=" + body)
    if extra:
        parts.extend(f"{k}={v}" for k, v in sorted(extra.items()))
    return ";".join(parts) if parts else "-"


def decode_constraints(detail: str):
    """Inverse of encode_constraints; unknown keys are ignored."""
    contain: tuple[int, ...] = ()
    avoid: tuple[int, ...] = ()
    slots: dict[int, int] = {}
    if detail and detail != "-":
        for part in detail.split(";"):
            key, eq, val = part.partition("=")
            if not eq:
                raise MultigraphError(f"bad detail segment: {part!r}")
            if key == "contain":
                contain = tuple(int(x) for x in val.split(",") if x)
            elif key == "avoid":
                avoid = tuple(int(x) for x in val.split(",") if x)
            elif key == "slots":
                for item in val.split(","):
                    if not item:
                        continue
                    e, i = item.split(":")
                    slots[int(e)] = int(i)
    return contain, avoid, slots


def _claim_args(arg: str) -> dict[str, str]:
    """'edge=3,nu=1' -> {'edge': '3', 'nu': '1'}; 'pair=0,5' keeps '0,5'."""
    out: dict[str, str] = {}
    key = None
    for token in arg.split(","):
        name, eq, val = token.partition("=")
        if eq:
            key = name
            out[key] = val
        elif key is not None:
            out[key] += "," + token
        else:
            raise MultigraphError(f"bad claim argument: {arg!r}")
    return out


# -- claim evaluation --------------------------------------------------------


def evaluate_claim(
    g: Multigraph,
    claim: str,
    witness: str = "-",
    detail: str = "-",
    budget: Budget | None = None,
) -> str | None:
    """None when the claim holds for g, else a failure reason.

    Negative claims re-run their search; a budget stop there raises
    ResourceError because the claim stays undecided.
    """
    if claim.startswith("edge-connectivity>="):
        r = int(claim[len("edge-connectivity>="):])
        lam, cut = edge_connectivity(g)
        if lam >= r:
            return None
        return f"edge connectivity {lam} < {r}, cut side {sorted(cut.side)}"
    if claim.startswith("cyclic-edge-connectivity>="):
        k = int(claim[len("cyclic-edge-connectivity>="):])
        ok, cut = cyclic_edge_connectivity_at_least(g, k)
        if ok:
            return None
        return f"cyclic edge cut of size {cut.value} at {sorted(cut.side)}"

    tag, _, arg = claim.partition(":")
    if tag == "regular":
        r = int(arg)
        if g.regularity() == r:
            return None
        return f"regularity is {g.regularity()}, claim says {r}"
    if tag == "r-graph":
        ok, witness = is_r_graph(g, int(arg))
        return None if ok else f"not a {arg}-graph: {witness}"
    if tag == "3-connected" and not arg:
        ok, cut = vertex_connectivity_at_least(g, 3)
        return None if ok else f"vertex cut {cut} disconnects the graph"
    if tag == "underlying-cubic" and not arg:
        return None if is_underlying_cubic(g) else "underlying simple graph not cubic"

    if tag == "pdpm":
        k = int(arg)
        ms = decode_members(witness)
        if len(ms) != k:
            return f"witness has {len(ms)} matchings, claim says {k}"
        contain, avoid, slots = decode_constraints(detail)
        bad = check_pdpm(g, ms, k, contain, avoid)
        if bad:
            return bad
        for e, i in slots.items():
            if e not in ms[i]:
                return f"edge {e} missing from slot {i}"
        return None
    if tag == "no-pdpm":
        k = int(arg)
        contain, avoid, slots = decode_constraints(detail)
        res = find_pdpm(g, k, contain, avoid, slots or None, budget)
        if res.status == "none":
            return None
        if res.status == "found":
            return f"a {k}-PDPM exists: {encode_members(res.witness.matchings)}"
        raise ResourceError(f"re-check budget exhausted after {res.nodes} nodes")

    if tag == "fr-triple":
        ms = decode_members(witness)
        bad = check_fr_triple(g, ms)
        if bad:
            return bad
        return _check_load(g, ms, arg)
    if tag == "bf-cover":
        return check_bf_cover(g, decode_members(witness))
    if tag == "cdc5":
        return check_5cdc(g, decode_members(witness))
    if tag == "special-2factor":
        return _check_two_factor(g, decode_members(witness), arg)

    if tag == "no-fr-triple":
        opts = _claim_args(arg) if arg else {}
        e = int(opts["edge"]) if "edge" in opts else None
        i = int(opts["nu"]) if "nu" in opts else None
        res = find_fr_triple(g, e, i, budget)
        return _negative(res, "an FR-triple exists")
    if tag == "no-bf-cover":
        return _negative(find_bf_cover(g, budget), "a BF-cover exists")
    if tag == "no-cdc5":
        return _negative(find_5cdc(g, budget), "a 5-CDC exists")
    if tag == "no-special-2factor":
        pair = None
        if arg:
            opts = _claim_args(arg)
            pair = tuple(int(x) for x in opts["pair"].split(","))
        res = find_special_2factor(g, pair, budget)
        return _negative(res, "a special 2-factor exists")

    return f"unknown claim tag: {claim!r}"


def _negative(res, found_msg: str) -> str | None:
    if res.status == "none":
        return None
    if res.status == "found":
        return found_msg
    raise ResourceError(f"re-check budget exhausted after {res.nodes} nodes")


def _check_load(g: Multigraph, ms, arg: str) -> str | None:
    if not arg:
        return None
    opts = _claim_args(arg)
    e, i = int(opts["edge"]), int(opts["nu"])
    prof = nu_profile(g, ms)
    if prof[e] != i:
        return f"edge {e} has load {prof[e]}, claim says {i}"
    return None


def _check_two_factor(g: Multigraph, members, arg: str) -> str | None:
    """Independent re-check: spanning 2-regular, meets every 3/4-cut."""
    if len(members) != 1:
        return f"witness must be a single edge set, got {len(members)} members"
    factor = members[0]
    deg = [0] * g.n
    for e in factor:
        if not 0 <= e < g.m:
            return f"edge id out of range: {e}"
        u, v = g.endpoints(e)
        deg[u] += 1
        deg[v] += 1
    off = [v for v in range(g.n) if deg[v] != 2]
    if off:
        return f"vertex {off[0]} has factor degree {deg[off[0]]}"
    for cut in enumerate_edge_cuts_upto(g, 4):
        if 3 <= cut.value <= 4 and not set(cut.boundary) & factor:
            return f"factor misses the cut at {sorted(cut.side)}"
    if arg:
        opts = _claim_args(arg)
        for e in (int(x) for x in opts["pair"].split(",")):
            if e not in factor:
                return f"required pair edge {e} not in the factor"
    return None


def verify_certificate(
    g: Multigraph, cert: Certificate, budget: Budget | None = None
) -> str | None:
    """Re-check one certificate against a graph document.

    None when the block's assertion is reproduced.  A verified block must
    hold; a failed block must indeed fail; a budget block asserts nothing
    and is rejected outright.
    """
    digest = graph_digest(g)
    if cert.graph_sha256 != digest:
        return f"graph digest mismatch: document {digest[:12]}.., certificate {cert.graph_sha256[:12]}.."
    if cert.status == BUDGET:
        return "budget certificate asserts nothing re-checkable"
    reason = evaluate_claim(g, cert.claim, cert.witness, cert.detail, budget)
    if cert.status == VERIFIED:
        return reason
    if reason is None:
        return "claim holds although the certificate marks it failed"
    return None


def run_claim(
    g: Multigraph, claim: str, witness: str = "-", detail: str = "-",
    budget: Budget | None = None,
) -> Certificate:
    """Evaluate a claim and wrap the outcome in a certificate."""
    t0 = time.perf_counter()
    reason = evaluate_claim(g, claim, witness, detail, budget)
    wall = time.perf_counter() - t0
    if reason is None:
        return make_certificate(g, claim, VERIFIED, witness, detail, wall_seconds=wall)
    extra = encode_constraints(extra={"reason": reason.replace(";", " ").replace("\n", " ")})
    if detail != "-":
        extra = detail + ";" + extra
    return make_certificate(g, claim, FAILED, witness, extra, wall_seconds=wall)
