"""Reference verification of colorings, independent of the search engine.

reference_clique_number treats the coloring as a plain graph: explicit
per-vertex adjacency bitsets, branch and bound with a greedy coloring
bound, no distance-symmetry shortcuts anywhere.  That independence is
deliberate; the search engine is checked against this routine, never the
other way around.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .coloring import Certificate, DistanceColoring, from_certificate


def _adjacency(c: DistanceColoring, color: int) -> list[int]:
    """Vertex adjacency bitsets of one color class, vertices 0-based."""
    n = c.order
    adj = [0] * n
    for a in range(n):
        for b in range(a + 1, n):
            if c.link_color(a + 1, b + 1) == color:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    return adj


def _greedy_clique(adj: list[int], n: int) -> int:
    """Size of a clique grown greedily; a strong starting incumbent.

    Seeding the branch and bound with this makes proofs of the exact
    maximum far cheaper, since pruning kicks in at full strength from the
    first descent.
    """
    best = 0
    verts = sorted(range(n), key=lambda v: -bin(adj[v]).count("1"))
    for start in verts[:8]:
        size = 1
        cand = adj[start]
        while cand:
            pick = -1
            pick_deg = -1
            avail = cand
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= avail - 1
                deg = bin(cand & adj[v]).count("1")
                if deg > pick_deg:
                    pick_deg = deg
                    pick = v
            size += 1
            cand &= adj[pick]
        best = max(best, size)
    return best


def _clique_number(adj: list[int], n: int) -> int:
    # relabel vertices by descending degree so the greedy coloring
    # handles dense vertices first, which tightens its bound
    perm = sorted(range(n), key=lambda v: -bin(adj[v]).count("1"))
    inv = [0] * n
    for new, old in enumerate(perm):
        inv[old] = new
    relabeled = [0] * n
    for new, old in enumerate(perm):
        m = adj[old]
        acc = 0
        while m:
            w = (m & -m).bit_length() - 1
            m &= m - 1
            acc |= 1 << inv[w]
        relabeled[new] = acc
    adj = relabeled
    best = _greedy_clique(adj, n)

    def expand(size: int, cand: int) -> None:
        nonlocal best
        # greedy coloring: vertices grouped into independent classes, a
        # clique can take at most one vertex per class
        order: list[int] = []
        bound: list[int] = []
        classes = 0
        rest = cand
        while rest:
            classes += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= avail - 1
                avail &= ~adj[v]
                rest &= ~(1 << v)
                order.append(v)
                bound.append(classes)
        for i in range(len(order) - 1, -1, -1):
            if size + bound[i] <= best:
                return
            v = order[i]
            cand &= ~(1 << v)
            sub = cand & adj[v]
            if sub:
                expand(size + 1, sub)
            elif size + 1 > best:
                best = size + 1

    if n:
        expand(0, (1 << n) - 1)
    return best


def reference_clique_number(c: DistanceColoring, color: int) -> int:
    """Exact clique number of one color class of a complete coloring."""
    if not c.is_complete():
        raise ValueError("clique number needs a complete coloring")
    if color not in (0, 1):
        raise ValueError("color must be 0 or 1")
    return _clique_number(_adjacency(c, color), c.order)


@dataclass(frozen=True)
class Verdict:
    """Outcome of checking a coloring against forbidden orders (k, j)."""

    order: int
    k: int
    j: int
    clique0: int
    clique1: int
    pass_as_given: bool
    pass_swapped: bool
    method: str
    seconds: float
    label: str = ""

    @property
    def passes(self) -> bool:
        return self.pass_as_given or self.pass_swapped

    def to_dict(self) -> dict:
        return {
            "order": self.order, "k": self.k, "j": self.j,
            "clique0": self.clique0, "clique1": self.clique1,
            "pass_as_given": self.pass_as_given,
            "pass_swapped": self.pass_swapped,
            "passes": self.passes, "method": self.method,
            "seconds": self.seconds, "label": self.label,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Verdict":
        return cls(order=data["order"], k=data["k"], j=data["j"],
                   clique0=data["clique0"], clique1=data["clique1"],
                   pass_as_given=data["pass_as_given"],
                   pass_swapped=data["pass_swapped"],
                   method=data["method"], seconds=data["seconds"],
                   label=data.get("label", ""))


def verify_coloring(c: DistanceColoring, k: int, j: int,
                    label: str = "") -> Verdict:
    """Both clique numbers plus which (k, j) orientation they satisfy.

    Published connection sets rarely say which color they list, so a
    coloring passes if either orientation stays under (k, j).
    """
    start = time.perf_counter()
    c0 = reference_clique_number(c, 0)
    c1 = reference_clique_number(c, 1)
    seconds = time.perf_counter() - start
    return Verdict(order=c.order, k=k, j=j, clique0=c0, clique1=c1,
                   pass_as_given=(c0 < k and c1 < j),
                   pass_swapped=(c1 < k and c0 < j),
                   method="bitset-bnb", seconds=seconds, label=label)


def verify_certificate(cert: Certificate, k: Optional[int] = None,
                       j: Optional[int] = None) -> Verdict:
    """Verdict for a certificate under its own or an explicit claim."""
    k = cert.k if k is None else k
    j = cert.j if j is None else j
    if k is None or j is None:
        raise ValueError("certificate carries no (k, j) claim")
    return verify_coloring(from_certificate(cert), k, j, label=cert.label)
