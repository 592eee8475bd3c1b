"""Kernel bodies shared by both backends.

Every function here is written in the numba-compatible subset of Python:
flat numpy arrays, integer scalars, no closures, no dict/set/object use.
nbimpl compiles these bodies with @njit; pyimpl runs them as-is (and
swaps in vectorized variants where numpy can express the whole loop).

Conventions: vertex subsets are int64 bitmasks; "free" edge state is -1,
avoided edges are -2, assigned edges carry their slot id.
"""

from __future__ import annotations

import numpy as np

BIG = np.int64(1) << 62

# search statuses shared with the wrappers
RUNNING = 0
FOUND = 1
NONE = 2


# -- exhaustive cut scans -------------------------------------------------
#
# Scans X over all nonempty subsets of {0..n-2}; vertex n-1 stays on the
# far side, so each unordered bipartition appears exactly once.  Gray-code
# order with an incremental boundary value; minima are reported per |X|
# parity with the smallest witness mask as tie-break.


def mincut_parity_scan(aptr, anbr, awt, deg, n):
    nn = n - 1
    total = np.int64(1) << nn
    s = np.zeros(n, dtype=np.int64)
    in_x = np.zeros(n, dtype=np.int64)
    best = np.full(2, BIG, dtype=np.int64)
    bmask = np.zeros(2, dtype=np.int64)
    cut = np.int64(0)
    mask = np.int64(0)
    size = 0
    i = np.int64(1)
    while i < total:
        # vertex toggled between gray(i-1) and gray(i)
        v = 0
        while ((i >> v) & 1) == 0:
            v += 1
        if in_x[v] == 0:
            cut += deg[v] - 2 * s[v]
            for q in range(aptr[v], aptr[v + 1]):
                s[anbr[q]] += awt[q]
            in_x[v] = 1
            size += 1
            mask |= np.int64(1) << v
        else:
            for q in range(aptr[v], aptr[v + 1]):
                s[anbr[q]] -= awt[q]
            cut -= deg[v] - 2 * s[v]
            in_x[v] = 0
            size -= 1
            mask &= ~(np.int64(1) << v)
        p = size & 1
        if cut < best[p] or (cut == best[p] and mask < bmask[p]):
            best[p] = cut
            bmask[p] = mask
        i += 1
    return best[0], bmask[0], best[1], bmask[1]


def cuts_upto_scan(aptr, anbr, awt, deg, n, climit):
    nn = n - 1
    total = np.int64(1) << nn
    s = np.zeros(n, dtype=np.int64)
    in_x = np.zeros(n, dtype=np.int64)
    out = np.empty(1024, dtype=np.int64)
    cap = 1024
    cnt = 0
    cut = np.int64(0)
    mask = np.int64(0)
    i = np.int64(1)
    while i < total:
        v = 0
        while ((i >> v) & 1) == 0:
            v += 1
        if in_x[v] == 0:
            cut += deg[v] - 2 * s[v]
            for q in range(aptr[v], aptr[v + 1]):
                s[anbr[q]] += awt[q]
            in_x[v] = 1
            mask |= np.int64(1) << v
        else:
            for q in range(aptr[v], aptr[v + 1]):
                s[anbr[q]] -= awt[q]
            cut -= deg[v] - 2 * s[v]
            in_x[v] = 0
            mask &= ~(np.int64(1) << v)
        if cut <= climit:
            if cnt == cap:
                grown = np.empty(cap * 2, dtype=np.int64)
                grown[:cap] = out
                out = grown
                cap *= 2
            out[cnt] = mask
            cnt += 1
        i += 1
    res = out[:cnt].copy()
    res.sort()
    return res


# -- slot-assignment search for pairwise disjoint perfect matchings -------
#
# Cells (v, j) run vertex-major: every vertex must be saturated in every
# slot.  At cell (v, j) all vertices below v are already saturated in j,
# so candidate partners automatically lie above v.  Resumable: all state
# lives in caller-owned arrays, scal = [mode, cell, pos, depth, nodes].


def pdpm_search_run(
    n,
    k,
    eu,
    ev,
    iptr,
    iedg,
    nc,
    cptr,
    cedg,
    ecptr,
    ecut,
    cut_par,
    edge_state,
    partner,
    free_deg,
    unsat,
    slot_size,
    first_edge,
    virgin0,
    cut_cnt,
    cut_avail,
    st_cell,
    st_pos,
    scal,
    node_limit,
):
    ncells = n * k
    mode = scal[0]
    cell = scal[1]
    pos = scal[2]
    depth = scal[3]
    nodes = scal[4]
    while True:
        if nodes >= node_limit:
            scal[0] = mode
            scal[1] = cell
            scal[2] = pos
            scal[3] = depth
            scal[4] = nodes
            return RUNNING
        if mode == 0:
            # descend: locate the next unsatisfied cell
            while cell < ncells:
                v = cell // k
                j = cell - v * k
                if partner[j * n + v] < 0:
                    break
                cell += 1
            if cell >= ncells:
                scal[0] = mode
                scal[1] = cell
                scal[2] = pos
                scal[3] = depth
                scal[4] = nodes
                return FOUND
            pos = iptr[cell // k]
            mode = 1
            continue
        if mode == 1:
            # scan candidates for the current cell starting at pos
            v = cell // k
            j = cell - v * k
            hi = iptr[v + 1]
            descended = False
            while pos < hi:
                e = iedg[pos]
                if edge_state[e] != -1:
                    pos += 1
                    continue
                o = ev[e] if eu[e] == v else eu[e]
                if partner[j * n + o] >= 0:
                    pos += 1
                    continue
                # parallel instances are interchangeable: only the least
                # free id between the same endpoints may be tried
                par_ok = True
                for q in range(iptr[v], pos):
                    e2 = iedg[q]
                    if edge_state[e2] == -1:
                        o2 = ev[e2] if eu[e2] == v else eu[e2]
                        if o2 == o:
                            par_ok = False
                            break
                if not par_ok:
                    pos += 1
                    continue
                # empty unconstrained slots are interchangeable: force
                # ascending first-edge ids across them
                if virgin0[j] == 1 and slot_size[j] == 0:
                    lb = np.int64(-1)
                    for j2 in range(j):
                        if virgin0[j2] == 1 and first_edge[j2] > lb:
                            lb = first_edge[j2]
                    if e <= lb:
                        pos += 1
                        continue
                nodes += 1
                edge_state[e] = j
                partner[j * n + v] = e
                partner[j * n + o] = e
                free_deg[v] -= 1
                free_deg[o] -= 1
                unsat[v] -= 1
                unsat[o] -= 1
                slot_size[j] += 1
                if slot_size[j] == 1 and virgin0[j] == 1:
                    first_edge[j] = e
                ok = free_deg[v] >= unsat[v] and free_deg[o] >= unsat[o]
                if nc > 0:
                    for q in range(ecptr[e], ecptr[e + 1]):
                        c = ecut[q]
                        cut_avail[c] -= 1
                        cut_cnt[j * nc + c] += 1
                    if ok:
                        for q in range(ecptr[e], ecptr[e + 1]):
                            c = ecut[q]
                            if cut_avail[c] == 0:
                                for j2 in range(k):
                                    if (cut_cnt[j2 * nc + c] & 1) != cut_par[c]:
                                        ok = False
                                        break
                            if not ok:
                                break
                if ok:
                    st_cell[depth] = cell
                    st_pos[depth] = pos
                    depth += 1
                    cell += 1
                    mode = 0
                    descended = True
                    break
                # inline undo
                if nc > 0:
                    for q in range(ecptr[e], ecptr[e + 1]):
                        c = ecut[q]
                        cut_avail[c] += 1
                        cut_cnt[j * nc + c] -= 1
                if slot_size[j] == 1 and virgin0[j] == 1:
                    first_edge[j] = -1
                slot_size[j] -= 1
                unsat[v] += 1
                unsat[o] += 1
                free_deg[v] += 1
                free_deg[o] += 1
                partner[j * n + v] = -1
                partner[j * n + o] = -1
                edge_state[e] = -1
                pos += 1
            if descended:
                continue
            mode = 2
            continue
        if mode == 2:
            # backtrack: undo the deepest assignment and resume its scan
            if depth == 0:
                scal[0] = mode
                scal[1] = cell
                scal[2] = pos
                scal[3] = depth
                scal[4] = nodes
                return NONE
            depth -= 1
            cell = st_cell[depth]
            pos = st_pos[depth]
            v = cell // k
            j = cell - v * k
            e = iedg[pos]
            o = ev[e] if eu[e] == v else eu[e]
            if nc > 0:
                for q in range(ecptr[e], ecptr[e + 1]):
                    c = ecut[q]
                    cut_avail[c] += 1
                    cut_cnt[j * nc + c] -= 1
            if slot_size[j] == 1 and virgin0[j] == 1:
                first_edge[j] = -1
            slot_size[j] -= 1
            unsat[v] += 1
            unsat[o] += 1
            free_deg[v] += 1
            free_deg[o] += 1
            partner[j * n + v] = -1
            partner[j * n + o] = -1
            edge_state[e] = -1
            pos += 1
            mode = 1
            continue


# -- pairwise disjoint tuple scan over enumerated matchings ---------------
#
# masks[i] is the edge bitmask of matching i (m <= 62), types[i] its
# projection class.  Enumerates all ascending k1-tuples with pairwise
# disjoint masks and reports the first whose type counts fail to cover
# `need`, or ok when none does.  Status: 1 covered, 0 violation (wit
# holds the tuple), -1 node budget exhausted.


def disjoint_tuple_scan(masks, types, need, k1, node_limit):
    p = masks.shape[0]
    ntypes = need.shape[0]
    idx = np.full(k1, -1, dtype=np.int64)
    acc = np.zeros(k1 + 1, dtype=np.int64)
    cnt = np.zeros(ntypes, dtype=np.int64)
    wit = np.full(k1, -1, dtype=np.int64)
    nodes = np.int64(0)
    d = 0
    start = 0
    while True:
        child = -1
        i = start
        while i < p:
            if (acc[d] & masks[i]) == 0:
                child = i
                break
            i += 1
        if child >= 0:
            nodes += 1
            if nodes > node_limit:
                return np.int64(-1), wit, nodes
            idx[d] = child
            acc[d + 1] = acc[d] | masks[child]
            if d + 1 == k1:
                for t in range(ntypes):
                    cnt[t] = 0
                for q in range(k1):
                    cnt[types[idx[q]]] += 1
                ok = True
                for t in range(ntypes):
                    if cnt[t] < need[t]:
                        ok = False
                        break
                if not ok:
                    for q in range(k1):
                        wit[q] = idx[q]
                    return np.int64(0), wit, nodes
                start = child + 1
            else:
                d += 1
                start = child + 1
        else:
            if d == 0:
                return np.int64(1), wit, nodes
            d -= 1
            start = idx[d] + 1


# -- canonical certificate for simple graphs on <= 16 vertices ------------
#
# Branch and bound over vertex orderings maximizing the column-major
# upper-triangle bitstring.  The string is packed into two int64 words of
# at most 60 bits each; lexicographic comparison equals tuple comparison.


def canon_cert(neigh, n):
    t_total = n * (n - 1) // 2
    t0 = t_total if t_total < 60 else 60
    t1 = t_total - t0
    best0 = np.int64(-1)
    best1 = np.int64(-1)
    have = False

    placed = np.zeros(n, dtype=np.int64)
    pw0 = np.zeros(n + 1, dtype=np.int64)
    pw1 = np.zeros(n + 1, dtype=np.int64)
    plen = np.zeros(n + 1, dtype=np.int64)
    cand = np.zeros((n, n), dtype=np.int64)
    ccnt = np.zeros(n, dtype=np.int64)
    cptr = np.zeros(n, dtype=np.int64)
    used = np.int64(0)

    q = 0
    fresh = True
    while q >= 0:
        if fresh:
            # collect unplaced candidates ordered by column value desc,
            # index asc
            cc = 0
            for c in range(n):
                if (used >> c) & 1:
                    continue
                col = np.int64(0)
                for t in range(q):
                    col = (col << 1) | ((neigh[c] >> placed[t]) & 1)
                key = (col << 5) | np.int64(c)
                # insertion sort by col desc then c asc
                pos = cc
                while pos > 0:
                    pcol = cand[q, pos - 1] >> 5
                    pc = cand[q, pos - 1] & 31
                    if pcol > col or (pcol == col and pc < c):
                        break
                    cand[q, pos] = cand[q, pos - 1]
                    pos -= 1
                cand[q, pos] = key
                cc += 1
            ccnt[q] = cc
            cptr[q] = 0
            fresh = False
        advanced = False
        while cptr[q] < ccnt[q]:
            key = cand[q, cptr[q]]
            cptr[q] += 1
            col = key >> 5
            c = key & 31
            # append q bits of col to the prefix
            w0 = pw0[q]
            w1 = pw1[q]
            ln = plen[q]
            room = 60 - ln
            if room < 0:
                room = 0
            if q <= room:
                w0 = (w0 << q) | col
            else:
                spill = q - room
                w0 = (w0 << room) | (col >> spill)
                w1 = (w1 << spill) | (col & ((np.int64(1) << spill) - 1))
            ln += q
            # compare against best prefix
            if have:
                cmp = 0
                if ln <= t0:
                    ref = best0 >> (t0 - ln)
                    if w0 < ref:
                        cmp = -1
                    elif w0 > ref:
                        cmp = 1
                else:
                    if w0 < best0:
                        cmp = -1
                    elif w0 > best0:
                        cmp = 1
                    else:
                        ref = best1 >> (t1 - (ln - t0))
                        if w1 < ref:
                            cmp = -1
                        elif w1 > ref:
                            cmp = 1
                if cmp < 0:
                    continue
            placed[q] = c
            used |= np.int64(1) << c
            pw0[q + 1] = w0
            pw1[q + 1] = w1
            plen[q + 1] = ln
            advanced = True
            break
        if advanced:
            if q + 1 == n:
                best0 = pw0[n]
                best1 = pw1[n]
                have = True
                used &= ~(np.int64(1) << placed[q])
            else:
                q += 1
                fresh = True
        else:
            q -= 1
            if q >= 0:
                used &= ~(np.int64(1) << placed[q])
    return best0, best1


# -- exhaustive generation of connected d-regular simple graphs -----------
#
# Row-by-row DFS: vertex v picks its neighbors above v in one step.  Sound
# prunings only: forced first row 0 -> {1..d}, adjacent-transposition
# partial-canonicity, stub feasibility, prefix-suffix connectivity.  The
# caller dedups emitted leaves by canonical certificate.  Resumable: scal
# = [v, mode, nodes, leaves_seen]; mode 0 enter, 1 advance, 2 done.


def regular_scan_step(n, d, neigh, deg, cand, ccnt, need, comb, scal, leaves, maxleaf):
    v = scal[0]
    mode = scal[1]
    nodes = scal[2]
    nl = 0
    while True:
        if mode == 2:
            scal[0] = v
            scal[1] = mode
            scal[2] = nodes
            return np.int64(1), np.int64(nl)
        if mode == 3:
            # leaf was just emitted; unwind to the last row
            v = n - 1
            mode = 5
            continue
        if mode == 0:
            if v == n:
                # all rows chosen and all degrees full: leaf
                seen = np.int64(1)
                stack0 = np.int64(1)
                while stack0 != 0:
                    w = 0
                    while ((stack0 >> w) & 1) == 0:
                        w += 1
                    stack0 &= ~(np.int64(1) << w)
                    nxt = neigh[w] & ~seen
                    seen |= nxt
                    stack0 |= nxt
                if seen == (np.int64(1) << n) - 1:
                    for w in range(n):
                        leaves[nl * n + w] = neigh[w]
                    nl += 1
                    scal[3] += 1
                    if nl == maxleaf:
                        scal[0] = v
                        scal[1] = 3
                        scal[2] = nodes
                        return np.int64(0), np.int64(nl)
                mode = 3
                continue
            nd = d - deg[v]
            cc = 0
            if v == 0:
                for w in range(1, d + 1):
                    cand[0 * n + cc] = w
                    cc += 1
            else:
                for w in range(v + 1, n):
                    if deg[w] < d:
                        cand[v * n + cc] = w
                        cc += 1
            ccnt[v] = cc
            need[v] = nd
            if nd < 0 or nd > cc:
                mode = 4
                continue
            for t in range(nd):
                comb[v * n + t] = t
            mode = 6
            continue
        if mode == 1:
            # advance the combination at row v (row currently not applied)
            nd = need[v]
            cc = ccnt[v]
            if nd == 0:
                mode = 4
                continue
            t = nd - 1
            while t >= 0 and comb[v * n + t] == cc - nd + t:
                t -= 1
            if t < 0:
                mode = 4
                continue
            comb[v * n + t] += 1
            for t2 in range(t + 1, nd):
                comb[v * n + t2] = comb[v * n + t2 - 1] + 1
            mode = 6
            continue
        if mode == 4:
            # backtrack to the previous row
            v -= 1
            if v < 0:
                mode = 2
                continue
            mode = 5
            continue
        if mode == 5:
            # undo row v then advance it
            nd = need[v]
            for t in range(nd):
                w = cand[v * n + comb[v * n + t]]
                neigh[v] &= ~(np.int64(1) << w)
                neigh[w] &= ~(np.int64(1) << v)
                deg[v] -= 1
                deg[w] -= 1
            mode = 1
            continue
        if mode == 6:
            # apply the current combination at row v and run prunes
            nodes += 1
            nd = need[v]
            for t in range(nd):
                w = cand[v * n + comb[v * n + t]]
                neigh[v] |= np.int64(1) << w
                neigh[w] |= np.int64(1) << v
                deg[v] += 1
                deg[w] += 1
            ok = True
            # stub feasibility on the suffix
            stubs = 0
            for w in range(v + 1, n):
                stubs += d - deg[w]
            if (stubs & 1) != 0:
                ok = False
            if ok:
                for w in range(v + 1, n):
                    df = d - deg[w]
                    if df == 0:
                        continue
                    room = 0
                    for x in range(v + 1, n):
                        if x == w or deg[x] >= d:
                            continue
                        if ((neigh[w] >> x) & 1) == 0:
                            room += 1
                    if df > room:
                        ok = False
                        break
            if ok and v + 1 < n:
                # future edges live inside the suffix; a suffix cut off from
                # the prefix can never reconnect
                any_link = False
                for w in range(v + 1, n):
                    if deg[w] > 0:
                        any_link = True
                        break
                if not any_link:
                    ok = False
            if ok:
                # adjacent transposition test: swapping a,a+1 must not give
                # a lexicographically larger decided region
                for a in range(v):
                    decided = -1
                    i = 0
                    while i < a:
                        ba = (neigh[i] >> a) & 1
                        bb = (neigh[i] >> (a + 1)) & 1
                        if ba != bb:
                            decided = 1 if ba == 1 else 0
                            break
                        i += 1
                    if decided < 0:
                        diff = (neigh[a] ^ neigh[a + 1]) >> (a + 2)
                        if diff != 0:
                            j = a + 2
                            while ((neigh[a] ^ neigh[a + 1]) >> j) & 1 == 0:
                                j += 1
                            decided = 1 if ((neigh[a] >> j) & 1) == 1 else 0
                    if decided == 0:
                        ok = False
                        break
            if ok:
                v += 1
                mode = 0
            else:
                mode = 5
            continue
