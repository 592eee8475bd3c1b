"""Compare the numba kernel backend against the numpy/python fallback.

Runs one workload per kernel entry point through the public API,
swapping the backend module under each consumer, and prints best-of-N
wall times side by side.  Results must agree across backends; a
mismatch aborts the run.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import pdpm.catalog
import pdpm.connectivity
import pdpm.matching
import pdpm.petersen
from pdpm.connectivity import cyclic_edge_connectivity_at_least, min_odd_cut
from pdpm.kernels import pyimpl
from pdpm.matching import find_pdpm
from pdpm.multigraph import Multigraph
from pdpm.petersen import check_type_coverage

try:
    from pdpm.kernels import nbimpl
except ImportError:
    nbimpl = None

# every module holding a backend reference
CONSUMERS = (pdpm.catalog, pdpm.connectivity, pdpm.matching, pdpm.petersen)


def circulant(n: int, offsets) -> Multigraph:
    pairs = set()
    for v in range(n):
        for o in offsets:
            u = (v + o) % n
            pairs.add((min(v, u), max(v, u)))
    return Multigraph(n, sorted(pairs))


def workloads():
    c16 = circulant(16, (1, 2, 3))
    c24 = circulant(24, (1, 2, 3))
    cubic24 = circulant(24, (1, 12))
    return [
        ("pdpm-search      find_pdpm(circulant(16; 1,2,3), 5)",
         lambda: (lambda r: (r.status, r.nodes))(find_pdpm(c16, 5))),
        ("odd-cut-scan     min_odd_cut(circulant(24; 1,2,3))",
         lambda: min_odd_cut(c24)[0]),
        ("cut-enumeration  cyclic_edge_connectivity(circulant(24; 1,12), 4)",
         lambda: cyclic_edge_connectivity_at_least(cubic24, 4)[0]),
        ("type-coverage    check_type_coverage((0, 1, 2))",
         lambda: check_type_coverage((0, 1, 2)).status),
        ("catalog-scan     cubic_graphs(10)",
         lambda: len(pdpm.catalog.cubic_graphs(10))),
    ]


def timed(fn, repeat: int):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3,
                    help="runs per workload, best wall time wins (default 3)")
    args = ap.parse_args()

    backends = [("python", pyimpl)]
    if nbimpl is not None:
        backends.append(("numba", nbimpl))
    else:
        print("numba unavailable, timing the fallback only")

    if nbimpl is not None:
        # pay JIT compilation before any timing
        for mod in CONSUMERS:
            mod.impl = nbimpl
        for _, fn in workloads():
            fn()

    rows = []
    for label, fn in workloads():
        cells = {}
        results = {}
        for name, backend in backends:
            for mod in CONSUMERS:
                mod.impl = backend
            cells[name], results[name] = timed(fn, args.repeat)
        if len(set(map(repr, results.values()))) != 1:
            raise SystemExit(f"backend disagreement on {label}: {results}")
        rows.append((label, cells, next(iter(results.values()))))

    width = max(len(r[0]) for r in rows)
    header = f"{'workload':<{width}}  {'python':>9}"
    if nbimpl is not None:
        header += f"  {'numba':>9}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, cells, result in rows:
        line = f"{label:<{width}}  {cells['python']:>8.3f}s"
        if nbimpl is not None:
            line += f"  {cells['numba']:>8.3f}s  {cells['python'] / cells['numba']:>7.1f}x"
        print(f"{line}   [{result}]")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
