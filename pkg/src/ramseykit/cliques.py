"""Incremental monochromatic clique machinery for distance colorings.

Everything here is rooted: a clique "through link b" contains vertices 0
and b+1.  When links are inserted in increasing distance order, every
monochromatic clique is caught at the insertion of its largest link,
which is always a link from vertex 0, so rooted scans are complete.

The adjacency operator invert(m, n), whose bit t says whether the link
between vertices t+1 and n+1 carries the scanned color, is computed with
two shifts by keeping each color mask together with its bit-reversed
twin.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .bitmask import BitMask, popcount, reverse_bits
from .coloring import DistanceColoring


@dataclass(frozen=True)
class CliqueRecord:
    """A monochromatic clique rooted at vertex 0."""

    color: int
    order: int
    vertices: BitMask

    def vertex_list(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.vertices.nbits) if self.vertices.bit(i))


def _record(color: int, links: int, order: int, coloring_order: int) -> CliqueRecord:
    # links holds bit v-1 for every non-root vertex v of the clique
    vertices = 1 | (links << 1)
    return CliqueRecord(color, popcount(vertices), BitMask(vertices, coloring_order))


class CliqueEngine:
    """Mutable clique scanner over one partial distance coloring.

    Tracks per-color link masks and their reversals so that rooted clique
    scans cost a handful of big-int operations per visited node.
    """

    def __init__(self, nbits: int, order: Optional[int] = None):
        if nbits < 0:
            raise ValueError("negative width")
        self.nbits = nbits
        self.order = order if order is not None else nbits + 1
        self.full = (1 << nbits) - 1
        self.m = [0, 0]
        self.rev = [0, 0]

    @classmethod
    def from_coloring(cls, c: DistanceColoring) -> "CliqueEngine":
        eng = cls(c.nbits, c.order)
        colors = c.colors.value
        assigned = c.assigned.value
        eng.m[1] = colors
        eng.m[0] = assigned & ~colors
        w = eng.nbits
        eng.rev[1] = reverse_bits(eng.m[1], w) if w else 0
        eng.rev[0] = reverse_bits(eng.m[0], w) if w else 0
        return eng

    def assign(self, i: int, color: int) -> None:
        bit = 1 << i
        self.m[color] |= bit
        self.rev[color] |= 1 << (self.nbits - 1 - i)

    def unassign(self, i: int, color: int) -> None:
        bit = 1 << i
        self.m[color] &= ~bit
        self.rev[color] &= ~(1 << (self.nbits - 1 - i))

    def invert(self, color: int, n: int) -> int:
        """Mask of links t such that link (t+1, n+1) carries color."""
        return (self.rev[color] >> (self.nbits - n)) | (
            (self.m[color] << (n + 1)) & self.full
        )

    # -- existence ---------------------------------------------------------

    def has_clique_through(self, b: int, color: int, min_order: int,
                           in_order: bool = True,
                           restrict: Optional[int] = None) -> bool:
        """True if a clique of order >= min_order through link b exists.

        in_order enables the counterpart symmetry pruning, valid only when
        no colored link lies above b.  restrict, when given, limits
        intermediate vertices to the set bits of that mask.
        """
        return self.violation_through(b, color, min_order, in_order, restrict) is not None

    def violation_through(self, b: int, color: int, min_order: int,
                          in_order: bool = True,
                          restrict: Optional[int] = None) -> Optional[int]:
        """Links mask of one clique of order >= min_order through b, or None."""
        if min_order <= 2:
            return 1 << b
        cand = self.m[color] & self.invert(color, b)
        if restrict is not None:
            cand &= restrict
        L = min_order
        if 3 + popcount(cand) < L:
            return None
        sym_depth = (L - 3) // 2 if in_order else -1
        inv = self.invert
        found: Optional[int] = None

        def rec(cand: int, chosen: int, depth: int) -> bool:
            nonlocal found
            order_next = depth + 3
            descend = depth <= sym_depth
            while cand:
                if descend:
                    t = cand.bit_length() - 1
                    # every remaining intermediate sits below (b+1)/2, so the
                    # counterpart of anything down here has already been seen
                    if 2 * t + 1 < b:
                        return False
                else:
                    t = (cand & -cand).bit_length() - 1
                cand ^= 1 << t
                if order_next >= L:
                    found = chosen | (1 << t) | (1 << b)
                    return True
                sub = cand & inv(color, t)
                if order_next + popcount(sub) >= L:
                    if rec(sub, chosen | (1 << t), depth + 1):
                        return True
            return False

        rec(cand, 0, 0)
        return found

    # -- complete listing --------------------------------------------------

    def list_through(self, b: int, color: int, min_order: int,
                     abort_order: Optional[int] = None,
                     restrict: Optional[int] = None):
        """All cliques through link b with order >= min_order, as links masks.

        Returns (records, violation): records is a list of (order, links)
        pairs; if abort_order is hit the scan stops and the offending
        clique comes back as violation instead.  No symmetry pruning here,
        the listing must be complete.
        """
        if min_order < 3:
            min_order = 3
        cand = self.m[color] & self.invert(color, b)
        if restrict is not None:
            cand &= restrict
        out: list[tuple[int, int]] = []
        inv = self.invert
        violation: Optional[int] = None

        def rec(cand: int, chosen: int, depth: int) -> bool:
            nonlocal violation
            order_next = depth + 3
            while cand:
                t = (cand & -cand).bit_length() - 1
                cand ^= 1 << t
                links = chosen | (1 << t) | (1 << b)
                if abort_order is not None and order_next >= abort_order:
                    violation = links
                    return True
                if order_next >= min_order:
                    out.append((order_next, links))
                sub = cand & inv(color, t)
                if order_next + popcount(sub) >= min_order:
                    if rec(sub, chosen | (1 << t), depth + 1):
                        return True
            return False

        rec(cand, 0, 0)
        if violation is not None:
            return [], violation
        return out, None

    # -- maximal order -----------------------------------------------------

    def max_order_through(self, b: int, color: int, floor: int,
                          restrict: Optional[int] = None,
                          in_order: bool = True) -> int:
        """Largest clique order through link b, if it beats floor."""
        best = max(floor, 2)
        cand = self.m[color] & self.invert(color, b)
        if restrict is not None:
            cand &= restrict
        inv = self.invert

        def rec(cand: int, depth: int) -> None:
            nonlocal best
            order_next = depth + 3
            while cand:
                if in_order and depth <= (best - 2) // 2:
                    t = cand.bit_length() - 1
                    if 2 * t + 1 < b:
                        return
                else:
                    t = (cand & -cand).bit_length() - 1
                cand ^= 1 << t
                if order_next > best:
                    best = order_next
                sub = cand & inv(color, t)
                if order_next + popcount(sub) > best:
                    rec(sub, depth + 1)
            return

        if 3 + popcount(cand) > best:
            rec(cand, 0)
        return best

    def _max_order_rotation(self, b: int, color: int, floor: int) -> int:
        """Rotation-pruned maximal order through link b on a cyclic coloring.

        Only explores cliques whose consecutive vertex gaps all stay within
        N - (b+1); every clique in a cyclic coloring has a rotation of that
        shape rooted at its own largest vertex.
        """
        n = self.order
        g = n - (b + 1)
        if g <= 0:
            return floor
        best = max(floor, 2)
        base = self.m[color] & ((1 << b) - 1) & self.invert(color, b)
        inv = self.invert
        window = (1 << g) - 1

        def rec(avail: int, last: int, size: int) -> None:
            # avail holds all common neighbors above earlier choices; the
            # gap window only limits the next step, not later ones
            nonlocal best
            cand = avail & (window << last)
            while cand:
                t = (cand & -cand).bit_length() - 1
                cand ^= 1 << t
                if b - t <= g and size + 1 > best:
                    best = size + 1
                nxt = avail & inv(color, t) & ~((1 << (t + 1)) - 1)
                if size + 1 + popcount(nxt) > best:
                    rec(nxt, t + 1, size + 1)
            return

        rec(base, 0, 2)
        return best

    def max_orders(self, rotation: bool = False) -> tuple[int, int]:
        """Exact maximal monochromatic clique order per color.

        Re-inserts links in increasing order; with rotation set (cyclic
        colorings only) the per-root scan is rotation pruned.
        """
        out = []
        for color in (0, 1):
            m = self.m[color]
            best = 1 if m == 0 else 2
            mm = m
            while mm:
                b = (mm & -mm).bit_length() - 1
                mm ^= 1 << b
                below = (1 << b) - 1
                if rotation:
                    best = self._max_order_rotation(b, color, best)
                else:
                    best = self.max_order_through(b, color, best, restrict=below)
            out.append(best)
        return (out[0], out[1])


def cliques_through_link(c: DistanceColoring, b: int, color: int,
                         min_order: int = 3) -> list[CliqueRecord]:
    """All monochromatic cliques of the color through link b, order >= min_order.

    b is the link index (distance b+1); the link must be assigned that
    color.  min_order below 3 is treated as 3.
    """
    if not 0 <= b < c.nbits:
        raise ValueError("link index out of range")
    if not c.assigned.bit(b) or c.colors.bit(b) != color:
        raise ValueError("link is not assigned the requested color")
    eng = CliqueEngine.from_coloring(c)
    pairs, _ = eng.list_through(b, color, max(min_order, 3))
    recs = [_record(color, links, order, c.order) for order, links in pairs]
    recs.sort(key=lambda r: (r.order, r.vertices.value))
    return recs


def max_clique_orders(c: DistanceColoring,
                      rotation: Optional[bool] = None) -> tuple[int, int]:
    """Exact maximal clique order for color 0 and color 1.

    rotation defaults to the cyclic flag of the coloring; forcing it on
    for a non-cyclic coloring would be unsound and raises.
    """
    if rotation is None:
        rotation = c.is_cyclic()
    elif rotation and not c.is_cyclic():
        raise ValueError("rotation pruning requires a cyclic coloring")
    return CliqueEngine.from_coloring(c).max_orders(rotation=rotation)


def rebuild_scan(c: DistanceColoring, k: int, j: int) -> Optional[CliqueRecord]:
    """Re-insert assigned links in increasing order and report any clique
    of order k (color 0) or j (color 1), else None.

    This is the safety net for out-of-order colored graphs, where the
    incremental through-link checks can miss a clique whose largest link
    was colored before an internal one.
    """
    eng = CliqueEngine(c.nbits, c.order)
    assigned = c.assigned.value
    colors = c.colors.value
    mm = assigned
    while mm:
        b = (mm & -mm).bit_length() - 1
        mm ^= 1 << b
        color = (colors >> b) & 1
        eng.assign(b, color)
        need = k if color == 0 else j
        links = eng.violation_through(b, color, need, in_order=True)
        if links is not None:
            return _record(color, links, popcount(links) + 1, c.order)
    return None


def is_valid_coloring(c: DistanceColoring, k: int, j: int) -> bool:
    """No color-0 clique of order k and no color-1 clique of order j."""
    return rebuild_scan(c, k, j) is None
