"""Pairwise disjoint perfect matchings in regular multigraphs.

Exact search with verifiable certificates, exhaustive small-scale
connectivity, and the gadget constructions used to assemble poorly
matchable regular multigraphs and reduce cubic matching covers.
"""

from .certificates import (
    Certificate,
    graph_digest,
    parse_certificates,
    verify_certificate,
    write_certificates,
)
from .connectivity import (
    CutCertificate,
    ResourceError,
    edge_connectivity,
    is_r_graph,
    min_odd_cut,
)
from .matching import (
    Budget,
    PdpmResult,
    PdpmWitness,
    classify,
    enumerate_perfect_matchings,
    find_pdpm,
    max_pdpm,
)
from .multigraph import (
    Multigraph,
    MultigraphError,
    ParseError,
    Provenance,
    add_edge_family,
    identify_vertices,
    parse_graph6,
    read_multigraph,
    underlying_simple,
    write_graph6,
    write_multigraph,
)
from .verify import check_pdpm, check_perfect_matching

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "Certificate",
    "CutCertificate",
    "Multigraph",
    "MultigraphError",
    "ParseError",
    "PdpmResult",
    "PdpmWitness",
    "Provenance",
    "ResourceError",
    "add_edge_family",
    "check_pdpm",
    "check_perfect_matching",
    "classify",
    "edge_connectivity",
    "enumerate_perfect_matchings",
    "find_pdpm",
    "graph_digest",
    "identify_vertices",
    "is_r_graph",
    "max_pdpm",
    "min_odd_cut",
    "parse_certificates",
    "parse_graph6",
    "read_multigraph",
    "underlying_simple",
    "verify_certificate",
    "write_certificates",
    "write_graph6",
    "write_multigraph",
    "__version__",
]
