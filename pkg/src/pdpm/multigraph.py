"""Undirected multigraphs with first-class edge instances.

Vertices are dense integers 0..n-1.  Every edge instance carries its own
integer id 0..m-1 in construction order; parallel edges are distinct
instances over the same endpoint pair.  Loops are rejected everywhere.
The multiplicity mu(u, v) is always derived from the instance list, never
stored.  All operations return new graphs; a Multigraph never mutates.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class MultigraphError(ValueError):
    """Raised for structurally invalid graphs or arguments."""


class ParseError(MultigraphError):
    """Malformed graph document.  Carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class Multigraph:
    """Immutable multigraph over vertices 0..n-1 with dense edge ids."""

    __slots__ = ("n", "_eu", "_ev", "_inc", "_deg")

    def __init__(self, n: int, pairs=()):
        if n < 0:
            raise MultigraphError(f"vertex count must be nonnegative, got {n}")
        self.n = int(n)
        us = []
        vs = []
        for idx, (u, v) in enumerate(pairs):
            u = int(u)
            v = int(v)
            if u == v:
                raise MultigraphError(f"loop at vertex {u} (edge {idx})")
            if not (0 <= u < n and 0 <= v < n):
                raise MultigraphError(f"edge {idx} endpoint out of range: ({u}, {v})")
            # normalized endpoint order; instance identity lives in the id
            us.append(min(u, v))
            vs.append(max(u, v))
        self._eu = np.asarray(us, dtype=np.int32)
        self._ev = np.asarray(vs, dtype=np.int32)
        self._inc: list[tuple[int, ...]] | None = None
        self._deg: np.ndarray | None = None

    # -- basic accessors ---------------------------------------------------

    @property
    def m(self) -> int:
        return int(self._eu.shape[0])

    def endpoints(self, e: int) -> tuple[int, int]:
        return int(self._eu[e]), int(self._ev[e])

    def endpoint_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Endpoint arrays (eu, ev), read-only views."""
        u = self._eu.view()
        v = self._ev.view()
        u.flags.writeable = False
        v.flags.writeable = False
        return u, v

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(a), int(b)) for a, b in zip(self._eu, self._ev)]

    def _incidence(self) -> list[tuple[int, ...]]:
        if self._inc is None:
            inc: list[list[int]] = [[] for _ in range(self.n)]
            for e in range(self.m):
                inc[self._eu[e]].append(e)
                inc[self._ev[e]].append(e)
            self._inc = [tuple(l) for l in inc]
        return self._inc

    def incident(self, v: int) -> tuple[int, ...]:
        """Edge ids at v, ascending."""
        return self._incidence()[v]

    def degrees(self) -> np.ndarray:
        if self._deg is None:
            d = np.zeros(self.n, dtype=np.int64)
            np.add.at(d, self._eu, 1)
            np.add.at(d, self._ev, 1)
            self._deg = d
        return self._deg.copy()

    def degree(self, v: int) -> int:
        return int(self.degrees()[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Distinct neighbors of v, ascending."""
        out = set()
        for e in self.incident(v):
            u, w = self.endpoints(e)
            out.add(w if u == v else u)
        return tuple(sorted(out))

    def mu(self, u: int, v: int) -> int:
        """Number of parallel instances between u and v."""
        if u == v:
            raise MultigraphError("mu is undefined on loops")
        a, b = min(u, v), max(u, v)
        return int(np.count_nonzero((self._eu == a) & (self._ev == b)))

    def mu_max(self) -> int:
        if self.m == 0:
            return 0
        keys = self._eu.astype(np.int64) * self.n + self._ev
        _, counts = np.unique(keys, return_counts=True)
        return int(counts.max())

    def other_end(self, e: int, v: int) -> int:
        u, w = self.endpoints(e)
        if v == u:
            return w
        if v == w:
            return u
        raise MultigraphError(f"edge {e} is not incident to vertex {v}")

    # -- derived structure -------------------------------------------------

    def boundary(self, X) -> tuple[int, ...]:
        """Ids of instances with exactly one endpoint in X."""
        mask = np.zeros(self.n, dtype=bool)
        mask[list(X)] = True
        cross = mask[self._eu] ^ mask[self._ev]
        return tuple(int(e) for e in np.nonzero(cross)[0])

    def induced_ids(self, X) -> tuple[int, ...]:
        """Ids of instances with both endpoints in X."""
        mask = np.zeros(self.n, dtype=bool)
        mask[list(X)] = True
        inside = mask[self._eu] & mask[self._ev]
        return tuple(int(e) for e in np.nonzero(inside)[0])

    def regularity(self) -> int | None:
        """Common degree r, or None if the graph is not regular."""
        if self.n == 0:
            return None
        d = self.degrees()
        r = int(d[0])
        return r if bool(np.all(d == r)) else None

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = np.zeros(self.n, dtype=bool)
        stack = [0]
        seen[0] = True
        while stack:
            v = stack.pop()
            for e in self.incident(v):
                w = self.other_end(e, v)
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        return bool(seen.all())

    def components(self) -> list[tuple[int, ...]]:
        comp = np.full(self.n, -1, dtype=np.int64)
        c = 0
        for s in range(self.n):
            if comp[s] >= 0:
                continue
            comp[s] = c
            stack = [s]
            while stack:
                v = stack.pop()
                for e in self.incident(v):
                    w = self.other_end(e, v)
                    if comp[w] < 0:
                        comp[w] = c
                        stack.append(w)
            c += 1
        return [tuple(int(v) for v in np.nonzero(comp == i)[0]) for i in range(c)]

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and bool(np.array_equal(self._eu, other._eu))
            and bool(np.array_equal(self._ev, other._ev))
        )

    def __hash__(self) -> int:
        return hash((self.n, self._eu.tobytes(), self._ev.tobytes()))

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, m={self.m})"


# -- provenance ---------------------------------------------------------

NEW_EDGE = "new"


@dataclass(frozen=True)
class Provenance:
    """Maps every output vertex and edge back to its source.

    vertices: output vertex -> (copy tag, source vertex).
    edges: output edge -> (copy tag, source edge); freshly created instances
    carry the tag "new" with an index into whatever family created them.
    When vertices are identified, the surviving entry records the smaller
    source vertex.
    """

    vertices: dict[int, tuple[str, int]] = field(default_factory=dict)
    edges: dict[int, tuple[str, int]] = field(default_factory=dict)

    def check_total(self, g: Multigraph) -> None:
        if set(self.vertices) != set(range(g.n)):
            raise MultigraphError("provenance vertex map is not total")
        if set(self.edges) != set(range(g.m)):
            raise MultigraphError("provenance edge map is not total")


def _identity_provenance(g: Multigraph, tag: str = "base") -> Provenance:
    return Provenance(
        vertices={v: (tag, v) for v in range(g.n)},
        edges={e: (tag, e) for e in range(g.m)},
    )


# -- construction primitives --------------------------------------------


def add_edge_family(g: Multigraph, pairs, t: int = 1) -> tuple[Multigraph, Provenance]:
    """Append t parallel instances for every pair; new ids follow existing ones.

    Returns the new graph and a provenance whose fresh edges are tagged
    ("new", i) with i the index into the flattened family.
    """
    if t < 1:
        raise MultigraphError(f"multiplicity must be >= 1, got {t}")
    old = g.pairs()
    fresh = []
    for u, v in pairs:
        for _ in range(t):
            fresh.append((int(u), int(v)))
    out = Multigraph(g.n, old + fresh)
    prov = _identity_provenance(g)
    for i in range(len(fresh)):
        prov.edges[g.m + i] = (NEW_EDGE, i)
    return out, prov


def delete_edges(g: Multigraph, ids) -> tuple[Multigraph, Provenance]:
    """Remove the given instances; survivors are renumbered densely in order."""
    drop = set(int(e) for e in ids)
    for e in drop:
        if not (0 <= e < g.m):
            raise MultigraphError(f"edge id out of range: {e}")
    keep = [e for e in range(g.m) if e not in drop]
    out = Multigraph(g.n, [g.endpoints(e) for e in keep])
    prov = Provenance(
        vertices={v: ("base", v) for v in range(g.n)},
        edges={i: ("base", e) for i, e in enumerate(keep)},
    )
    return out, prov


def delete_vertices(g: Multigraph, X) -> tuple[Multigraph, Provenance]:
    """Remove vertices and all incident instances; survivors renumber densely."""
    drop = set(int(v) for v in X)
    for v in drop:
        if not (0 <= v < g.n):
            raise MultigraphError(f"vertex out of range: {v}")
    vmap = {}
    nxt = 0
    for v in range(g.n):
        if v not in drop:
            vmap[v] = nxt
            nxt += 1
    keep = []
    emap = {}
    for e in range(g.m):
        u, v = g.endpoints(e)
        if u in drop or v in drop:
            continue
        emap[len(keep)] = e
        keep.append((vmap[u], vmap[v]))
    out = Multigraph(nxt, keep)
    prov = Provenance(
        vertices={vmap[v]: ("base", v) for v in vmap},
        edges={i: ("base", emap[i]) for i in emap},
    )
    return out, prov


def identify_vertices(g: Multigraph, u: int, v: int) -> tuple[Multigraph, Provenance]:
    """Merge u and v into one vertex, discarding all u-v instances.

    The merged vertex keeps the smaller index; vertices above the larger
    index shift down by one.  The provenance records the smaller source for
    the merged vertex.  Resulting degree is d(u) + d(v) - 2 mu(u, v).
    """
    u, v = int(u), int(v)
    if u == v:
        raise MultigraphError("cannot identify a vertex with itself")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise MultigraphError(f"vertex out of range: ({u}, {v})")
    a, b = min(u, v), max(u, v)

    def vmap(w: int) -> int:
        if w == b:
            return a
        return w if w < b else w - 1

    keep = []
    emap = {}
    for e in range(g.m):
        x, y = g.endpoints(e)
        if {x, y} == {a, b}:
            continue
        emap[len(keep)] = e
        keep.append((vmap(x), vmap(y)))
    out = Multigraph(g.n - 1, keep)
    prov = Provenance(
        vertices={vmap(w): ("base", w) for w in range(g.n) if w != b},
        edges={i: ("base", emap[i]) for i in emap},
    )
    prov.vertices[a] = ("base", a)
    return out, prov


def disjoint_union(g: Multigraph, h: Multigraph) -> tuple[Multigraph, Provenance]:
    """Place h after g; h's vertices and edges shift by g.n and g.m."""
    pairs = g.pairs() + [(u + g.n, v + g.n) for u, v in h.pairs()]
    out = Multigraph(g.n + h.n, pairs)
    prov = Provenance(
        vertices={v: ("left", v) for v in range(g.n)},
        edges={e: ("left", e) for e in range(g.m)},
    )
    for v in range(h.n):
        prov.vertices[g.n + v] = ("right", v)
    for e in range(h.m):
        prov.edges[g.m + e] = ("right", e)
    return out, prov


def underlying_simple(g: Multigraph) -> Multigraph:
    """Simple graph on the same vertices: one edge per adjacent pair."""
    seen = sorted(set((min(u, v), max(u, v)) for u, v in g.pairs()))
    return Multigraph(g.n, seen)


def is_underlying_cubic(g: Multigraph) -> bool:
    s = underlying_simple(g)
    return s.regularity() == 3


# -- small named families ------------------------------------------------


def cycle_graph(n: int) -> Multigraph:
    if n < 3:
        raise MultigraphError(f"cycle needs >= 3 vertices, got {n}")
    return Multigraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Multigraph:
    return Multigraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def theta_graph(t: int) -> Multigraph:
    """Two vertices joined by t parallel instances."""
    if t < 1:
        raise MultigraphError(f"theta needs >= 1 edge, got {t}")
    return Multigraph(2, [(0, 1)] * t)


# -- text format ----------------------------------------------------------

MGF_VERSION = 1


def write_multigraph(g: Multigraph) -> str:
    """Serialize to the line format: header, vertex count, one e-line per id."""
    lines = [f"mgf {MGF_VERSION}", f"n {g.n}"]
    for u, v in g.pairs():
        lines.append(f"e {u} {v}")
    return "\n".join(lines) + "\n"


def read_multigraph(text: str) -> Multigraph:
    """Parse the mgf line format.  Errors name the offending line."""
    lines = text.splitlines()
    idx = 0

    def next_line() -> tuple[int, str]:
        nonlocal idx
        while idx < len(lines):
            ln = lines[idx].strip()
            idx += 1
            if ln and not ln.startswith("#"):
                return idx, ln
        return idx, ""

    lno, header = next_line()
    if not header:
        raise ParseError("empty document", lno)
    parts = header.split()
    if parts[0] != "mgf" or len(parts) != 2 or not parts[1].isdigit():
        raise ParseError(f"expected 'mgf <version>', got {header!r}", lno)
    if int(parts[1]) != MGF_VERSION:
        raise ParseError(f"unsupported format version {parts[1]}", lno)

    lno, nline = next_line()
    nparts = nline.split()
    if len(nparts) != 2 or nparts[0] != "n" or not nparts[1].isdigit():
        raise ParseError(f"expected 'n <count>', got {nline!r}", lno)
    n = int(nparts[1])

    pairs = []
    while True:
        lno, ln = next_line()
        if not ln:
            break
        p = ln.split()
        if p[0] != "e" or len(p) != 3:
            raise ParseError(f"expected 'e <u> <v>', got {ln!r}", lno)
        try:
            u, v = int(p[1]), int(p[2])
        except ValueError:
            raise ParseError(f"non-integer endpoint in {ln!r}", lno) from None
        if u == v:
            raise ParseError(f"loop at vertex {u}", lno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint out of range in {ln!r}", lno)
        pairs.append((u, v))
    return Multigraph(n, pairs)


# -- graph6 / sparse6 -----------------------------------------------------


def _g6_bytes(text: str) -> bytes:
    return text.strip().encode("ascii")


def _g6_read_n(data: bytes, pos: int) -> tuple[int, int]:
    if pos >= len(data):
        raise ParseError("truncated size field", 1)
    c = data[pos] - 63
    if c < 0:
        raise ParseError("invalid size byte", 1)
    if c < 63:
        return c, pos + 1
    if pos + 1 < len(data) and data[pos + 1] == ord("~"):
        if pos + 8 > len(data):
            raise ParseError("truncated 8-byte size field", 1)
        n = 0
        for i in range(pos + 2, pos + 8):
            n = (n << 6) | (data[i] - 63)
        return n, pos + 8
    if pos + 4 > len(data):
        raise ParseError("truncated 4-byte size field", 1)
    n = 0
    for i in range(pos + 1, pos + 4):
        n = (n << 6) | (data[i] - 63)
    return n, pos + 4


def _bits_of(data: bytes, pos: int):
    for i in range(pos, len(data)):
        c = data[i] - 63
        if not (0 <= c < 64):
            raise ParseError(f"invalid graph6 byte {data[i]!r}", 1)
        for k in range(5, -1, -1):
            yield (c >> k) & 1


def _parse_graph6_body(data: bytes) -> Multigraph:
    n, pos = _g6_read_n(data, 0)
    need = n * (n - 1) // 2
    bits = _bits_of(data, pos)
    pairs = []
    got = 0
    for j in range(n):
        for i in range(j):
            try:
                b = next(bits)
            except StopIteration:
                raise ParseError("truncated adjacency bits", 1) from None
            got += 1
            if b:
                pairs.append((i, j))
    for b in bits:
        if b:
            raise ParseError("nonzero padding bits", 1)
    if got != need:
        raise ParseError("truncated adjacency bits", 1)
    return Multigraph(n, pairs)


def _parse_sparse6_body(data: bytes) -> Multigraph:
    n, pos = _g6_read_n(data, 0)
    k = max(1, (n - 1).bit_length())
    bits = list(_bits_of(data, pos))
    pairs = []
    v = 0
    i = 0
    while i + k < len(bits):
        b = bits[i]
        x = 0
        for t in range(k):
            x = (x << 1) | bits[i + 1 + t]
        i += 1 + k
        if b:
            v += 1
        if x >= n or v >= n:
            break
        if x > v:
            v = x
        else:
            if x == v:
                raise ParseError("loop in sparse6 stream", 1)
            pairs.append((x, v))
    return Multigraph(n, pairs)


def parse_graph6(text: str) -> Multigraph:
    """Decode one graph6 or sparse6 line (optional format header allowed).

    graph6 yields a simple graph; sparse6 may carry parallel instances,
    which are preserved.  Loops are rejected.
    """
    data = _g6_bytes(text)
    for hdr in (b">>graph6<<", b">>sparse6<<"):
        if data.startswith(hdr):
            data = data[len(hdr):]
    if not data:
        raise ParseError("empty graph6 document", 1)
    if data.startswith(b":"):
        return _parse_sparse6_body(data[1:])
    return _parse_graph6_body(data)


def write_graph6(g: Multigraph) -> str:
    """Encode a simple graph as one graph6 line (standard padding)."""
    if g.mu_max() > 1:
        raise MultigraphError("graph6 cannot carry parallel edges")
    n = g.n
    if n > 258047:
        raise MultigraphError(f"graph6 size limit exceeded: {n}")
    out = bytearray()
    if n < 63:
        out.append(n + 63)
    else:
        out.append(ord("~"))
        out.extend(((n >> 12) & 63) + 63 for _ in (0,))
        out.append(((n >> 6) & 63) + 63)
        out.append((n & 63) + 63)
    adj = np.zeros((n, n), dtype=bool)
    for u, v in g.pairs():
        adj[u, v] = adj[v, u] = True
    acc = 0
    nb = 0
    for j in range(n):
        for i in range(j):
            acc = (acc << 1) | int(adj[i, j])
            nb += 1
            if nb == 6:
                out.append(acc + 63)
                acc = 0
                nb = 0
    if nb:
        acc <<= 6 - nb
        out.append(acc + 63)
    return out.decode("ascii")
