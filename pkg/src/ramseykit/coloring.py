"""Distance colorings of complete graphs and their basic operations.

A two-coloring of the links of a complete graph on vertices 1..N is a
distance coloring when the color of link (a, b) depends only on |a - b|.
It is stored as N-1 bits: bit i holds the color of all links at distance
i + 1, equivalently the color of link (1, i + 2).  A coloring is cyclic
(circulant) exactly when the bit string is palindromic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .bitmask import BitMask, mask_to_hex, hex_to_mask, reverse_bits


@dataclass(frozen=True)
class DistanceColoring:
    """A possibly partial distance coloring of a given order.

    colors holds the color bits, assigned marks which distances have a
    color at all.  Bits of colors outside assigned must be zero.
    """

    order: int
    colors: BitMask
    assigned: BitMask

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError("order must be at least 1")
        nbits = self.order - 1
        if self.colors.nbits != nbits or self.assigned.nbits != nbits:
            raise ValueError("mask lengths must equal order - 1")
        if self.colors.value & ~self.assigned.value:
            raise ValueError("colored bit outside assigned set")

    @classmethod
    def complete(cls, order: int, colors: int) -> "DistanceColoring":
        nbits = order - 1
        full = (1 << nbits) - 1
        return cls(order, BitMask(colors, nbits), BitMask(full, nbits))

    @classmethod
    def partial(cls, order: int, colors: int, assigned: int) -> "DistanceColoring":
        nbits = order - 1
        return cls(order, BitMask(colors, nbits), BitMask(assigned, nbits))

    @property
    def nbits(self) -> int:
        return self.order - 1

    def is_complete(self) -> bool:
        return self.assigned.value == (1 << self.nbits) - 1

    def link_color(self, a: int, b: int) -> Optional[int]:
        """Color of link (a, b) for 1-based vertices, None if unassigned."""
        if not (1 <= a <= self.order and 1 <= b <= self.order):
            raise ValueError("vertex out of range")
        if a == b:
            raise ValueError("no link from a vertex to itself")
        i = abs(a - b) - 1
        if not self.assigned.bit(i):
            return None
        return self.colors.bit(i)

    def distance_color(self, d: int) -> Optional[int]:
        """Color of distance d (1 <= d < order), None if unassigned."""
        if not 1 <= d <= self.nbits:
            raise ValueError("distance out of range")
        if not self.assigned.bit(d - 1):
            return None
        return self.colors.bit(d - 1)

    def is_cyclic(self) -> bool:
        """True for complete palindromic colorings (circulant graphs)."""
        if not self.is_complete():
            return False
        v = self.colors.value
        return v == reverse_bits(v, self.nbits)

    def prefix(self, m: int) -> "DistanceColoring":
        """Restriction to the first m vertices, itself a distance coloring."""
        if not 1 <= m <= self.order:
            raise ValueError("prefix order out of range")
        keep = (1 << (m - 1)) - 1
        return DistanceColoring.partial(
            m, self.colors.value & keep, self.assigned.value & keep
        )

    def complement(self) -> "DistanceColoring":
        """Same coloring with the two colors swapped."""
        return DistanceColoring.partial(
            self.order,
            self.colors.value ^ self.assigned.value,
            self.assigned.value,
        )


@dataclass(frozen=True)
class Signature:
    """A fully colored prefix on s vertices, the unit of search sharding."""

    s: int
    bits: BitMask

    def __post_init__(self) -> None:
        if self.s < 2:
            raise ValueError("signature needs at least 2 vertices")
        if self.bits.nbits != self.s - 1:
            raise ValueError("signature must carry s - 1 bits")

    def coloring(self) -> DistanceColoring:
        return DistanceColoring.complete(self.s, self.bits.value)

    def key(self) -> tuple[int, int]:
        return (self.s, self.bits.value)


@dataclass(frozen=True)
class SearchParams:
    """Knobs shared by the enumeration and signature searches.

    k and j are the forbidden clique orders for colors 0 and 1.  s is the
    signature size, d the minimum interesting order.  abort_threshold caps
    the per-signature test count.
    """

    k: int
    j: int
    s: int = 4
    d: int = 6
    abort_threshold: int = 30_000
    L_estimate: Optional[int] = None

    def __post_init__(self) -> None:
        if self.k < 3 or self.j < self.k:
            raise ValueError("need 3 <= k <= j")
        if not 2 <= self.s < self.d:
            raise ValueError("need 2 <= s < d")
        if self.abort_threshold < 1:
            raise ValueError("abort threshold must be positive")

    @classmethod
    def from_estimate(cls, k: int, j: int, L_estimate: int,
                      abort_threshold: int = 30_000) -> "SearchParams":
        """Pick s and d from a longest-coloring estimate.

        d sits 20 below the estimate and s in the middle of the d/2 band,
        the settings that kept signature counts manageable in practice.
        """
        d = L_estimate - 20
        if d < 4:
            raise ValueError("estimate too small to derive parameters")
        s = max(2, d // 2 - 10)
        return cls(k=k, j=j, s=s, d=d,
                   abort_threshold=abort_threshold, L_estimate=L_estimate)

    def forbidden_order(self, color: int) -> int:
        return self.k if color == 0 else self.j


@dataclass(frozen=True)
class Certificate:
    """A circulant coloring given by its order and connection set.

    The connection set lists the distances of one color class; each listed
    distance d also stands for N - d.
    """

    order: int
    connection_set: tuple[int, ...]
    k: Optional[int] = None
    j: Optional[int] = None
    label: str = ""

    def __post_init__(self) -> None:
        if self.order < 2:
            raise ValueError("order must be at least 2")
        seen = set()
        for d in self.connection_set:
            if not 1 <= d <= self.order - 1:
                raise ValueError("connection distance out of range")
            if d in seen:
                raise ValueError("duplicate connection distance")
            seen.add(d)


def from_certificate(cert: Certificate) -> DistanceColoring:
    """Expand a certificate into the full cyclic coloring (set = color 1)."""
    n = cert.order
    colors = 0
    for d in cert.connection_set:
        colors |= 1 << (d - 1)
        colors |= 1 << (n - d - 1)
    return DistanceColoring.complete(n, colors)


def to_certificate(c: DistanceColoring, k: Optional[int] = None,
                   j: Optional[int] = None, label: str = "") -> Certificate:
    """Certificate form of a cyclic coloring, distances normalized to <= N/2."""
    if not c.is_cyclic():
        raise ValueError("only cyclic colorings have certificate form")
    dists = tuple(
        d for d in range(1, c.order // 2 + 1) if c.colors.bit(d - 1)
    )
    return Certificate(c.order, dists, k=k, j=j, label=label)


def relabel(c: DistanceColoring, m: int) -> DistanceColoring:
    """Relabeling of a complete cyclic coloring by x -> m * x mod order.

    New bit x takes the old color of distance m * (x + 1) mod N.  Requires
    gcd(m, N) = 1 so that the map permutes distances.
    """
    n = c.order
    if math.gcd(m, n) != 1:
        raise ValueError("relabel factor must be coprime with the order")
    if not c.is_cyclic():
        raise ValueError("relabel needs a complete cyclic coloring")
    old = c.colors.value
    new = 0
    for x in range(n - 1):
        d = (m * (x + 1)) % n
        new |= ((old >> (d - 1)) & 1) << x
    return DistanceColoring.complete(n, new)


def relabel_factors(n: int) -> list[int]:
    """All m in 1..n-1 coprime with n."""
    return [m for m in range(1, n) if math.gcd(m, n) == 1]


def distinct_relabelings(c: DistanceColoring) -> set[int]:
    """Color masks of all relabelings of a cyclic coloring."""
    return {relabel(c, m).colors.value for m in relabel_factors(c.order)}


def canonical_form(c: DistanceColoring, reflect_colors: bool = False) -> BitMask:
    """Lexicographically minimal bit string over all relabelings.

    With reflect_colors the orbit also includes the global color
    complement, appropriate for diagonal (k = k) searches where the two
    colors play symmetric roles.
    """
    if not c.is_cyclic():
        raise ValueError("canonical form is defined for cyclic colorings")
    nbits = c.nbits
    candidates = distinct_relabelings(c)
    if reflect_colors:
        full = (1 << nbits) - 1
        candidates |= {v ^ full for v in candidates}
    # Lexicographic order on b_0 b_1 ... equals numeric order after
    # writing b_0 as the most significant bit.
    best = min(candidates, key=lambda v: reverse_bits(v, nbits))
    return BitMask(best, nbits)


def iter_complete_colorings(order: int) -> Iterator[DistanceColoring]:
    """All complete distance colorings of the given order."""
    for v in range(1 << (order - 1)):
        yield DistanceColoring.complete(order, v)
