"""Search and verification tools for two-color Ramsey lower bounds built
on distance colorings: link colors depend only on vertex distance, so a
coloring of the complete graph on N vertices is a single (N-1)-bit mask.
"""

from .bitmask import BitMask
from .coloring import Certificate, DistanceColoring, SearchParams, Signature
from .cliques import (CliqueRecord, cliques_through_link, is_valid_coloring,
                      max_clique_orders, rebuild_scan)

__all__ = [
    "BitMask",
    "Certificate",
    "CliqueRecord",
    "DistanceColoring",
    "SearchParams",
    "Signature",
    "cliques_through_link",
    "is_valid_coloring",
    "max_clique_orders",
    "rebuild_scan",
]
