"""Look-ahead pruning for partial colorings: forced links, cliques one or
two links short of completion, and a transitive implication filter that
rejects branches with no extension to the target order.

All of this is sound but deliberately incomplete: a verdict other than
contradiction promises nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .bitmask import BitMask, iter_bits, reverse_bits
from .cliques import CliqueEngine
from .coloring import DistanceColoring, SearchParams


class DeadBranchError(Exception):
    """Raised when a partial coloring already contains a forbidden clique."""


def _engine_over(c: DistanceColoring, horizon: int) -> CliqueEngine:
    eng = CliqueEngine(horizon, horizon + 1)
    colors = c.colors.value
    assigned = c.assigned.value
    eng.m[1] = colors
    eng.m[0] = assigned & ~colors
    eng.rev[1] = reverse_bits(eng.m[1], horizon)
    eng.rev[0] = reverse_bits(eng.m[0], horizon)
    return eng


def _submaximal_links(eng: CliqueEngine, b: int, color: int,
                      order_wanted: int) -> list[int]:
    """Links masks of cliques of exactly order_wanted through link b."""
    if order_wanted <= 2:
        return [1 << b]
    pairs, violation = eng.list_through(b, color, order_wanted,
                                        abort_order=order_wanted + 1)
    if violation is not None:
        raise DeadBranchError("forbidden clique already present")
    return [links for order, links in pairs if order == order_wanted]


def forced_links(c: DistanceColoring, b: int, color: int,
                 params: SearchParams,
                 horizon: Optional[int] = None) -> list[tuple[int, int]]:
    """Links forced to the opposite color after assigning link b.

    A link t is forced when some clique of order k-1 through b, together
    with vertex t+1 fully connected to it in the clique color, needs only
    the uncolored link (0, t+1) to close a forbidden clique.  Computed by
    intersecting shifted masks, one per clique vertex.

    horizon bounds the link indices considered (default: the order-d
    graph of params).  Raises DeadBranchError if b already sits inside a
    forbidden clique.
    """
    if horizon is None:
        horizon = max(c.nbits, params.d - 1)
    if not 0 <= b < c.nbits:
        raise ValueError("link index out of range")
    if not c.assigned.bit(b) or c.colors.bit(b) != color:
        raise ValueError("link b is not assigned the given color")
    eng = _engine_over(c, horizon)
    need = params.forbidden_order(color)
    if eng.violation_through(b, color, need, in_order=False) is not None:
        raise DeadBranchError("forbidden clique already present")
    cliques = _submaximal_links(eng, b, color, need - 1)
    uncolored = ~c.assigned.value & ((1 << horizon) - 1)
    forced_mask = 0
    shifted: dict[int, int] = {}
    for links in cliques:
        cand = uncolored
        rest = links
        while rest and cand:
            pos = (rest & -rest).bit_length() - 1
            rest ^= 1 << pos
            sm = shifted.get(pos)
            if sm is None:
                sm = eng.invert(color, pos)
                shifted[pos] = sm
            cand &= sm
        if cand:
            forced_mask |= cand
            uncolored &= ~cand
    return [(t, 1 - color) for t in iter_bits(forced_mask)]


def forced_links_state(c: DistanceColoring, params: SearchParams,
                       horizon: Optional[int] = None) -> list[tuple[int, int]]:
    """Forced links implied by every one-short rooted clique of the state.

    Union of forced_links over all assigned links; a conflict (some link
    forced both ways) raises DeadBranchError.
    """
    if horizon is None:
        horizon = max(c.nbits, params.d - 1)
    want: dict[int, int] = {}
    for b in iter_bits(c.assigned.value):
        color = c.colors.bit(b)
        for t, forced_color in forced_links(c, b, color, params, horizon):
            prev = want.get(t)
            if prev is not None and prev != forced_color:
                raise DeadBranchError("link %d forced both colors" % t)
            want[t] = forced_color
    return sorted(want.items())


@dataclass(frozen=True)
class IncompleteClique:
    """A forbidden clique missing one or two of its root links.

    missing lists the unassigned link indices; coloring every one of them
    with `color` would complete the clique.
    """

    color: int
    missing: tuple[int, ...]
    vertices: BitMask


def _base_cliques(eng: CliqueEngine, color: int, order_wanted: int,
                  colored_mask: int) -> list[int]:
    """Links masks of all rooted cliques of exactly order_wanted."""
    if order_wanted <= 1:
        return [0]
    if order_wanted == 2:
        return [1 << b for b in iter_bits(colored_mask)]
    seen: set[int] = set()
    mm = colored_mask
    while mm:
        b = (mm & -mm).bit_length() - 1
        mm ^= 1 << b
        pairs, violation = eng.list_through(b, color, order_wanted,
                                            restrict=(1 << b) - 1)
        if violation is not None:
            raise DeadBranchError("forbidden clique already present")
        for order, links in pairs:
            if order == order_wanted:
                seen.add(links)
    return sorted(seen)


def incomplete_cliques(c: DistanceColoring, params: SearchParams,
                       horizon: Optional[int] = None,
                       max_gap: int = 2) -> list[IncompleteClique]:
    """Forbidden cliques missing max_gap root links (2, optionally 3).

    Built from complete cliques two short of the forbidden order: every
    pair of uncolored root links whose endpoints attach to such a clique,
    and to each other, in the clique color yields a pair entry.
    """
    if max_gap not in (2, 3):
        raise ValueError("max_gap must be 2 or 3")
    if horizon is None:
        horizon = max(c.nbits, params.d - 1)
    eng = _engine_over(c, horizon)
    uncolored = ~c.assigned.value & ((1 << horizon) - 1)
    out: list[IncompleteClique] = []
    for color in (0, 1):
        need = params.forbidden_order(color)
        for links in _base_cliques(eng, color, need - 2, eng.m[color]):
            cand = uncolored
            rest = links
            while rest and cand:
                pos = (rest & -rest).bit_length() - 1
                rest ^= 1 << pos
                cand &= eng.invert(color, pos)
            if not cand:
                continue
            members = list(iter_bits(cand))
            for a_idx in range(len(members)):
                m1 = members[a_idx]
                adj1 = eng.invert(color, m1)
                for m2 in members[a_idx + 1:]:
                    if not (adj1 >> m2) & 1:
                        continue
                    verts = 1 | (links << 1) | (2 << m1) | (2 << m2)
                    out.append(IncompleteClique(
                        color, (m1, m2), BitMask(verts, horizon + 1)))
                    if max_gap == 3:
                        adj2 = eng.invert(color, m2)
                        both = adj1 & adj2 & cand
                        for m3 in iter_bits(both):
                            if m3 <= m2:
                                continue
                            verts3 = verts | (2 << m3)
                            out.append(IncompleteClique(
                                color, (m1, m2, m3),
                                BitMask(verts3, horizon + 1)))
    return out


@dataclass
class ImplicationArray:
    """Per-link implication sets: slot 0/1 hold the links forced to 0/1 by
    assuming the link is 0, slots 2/3 the same under the link-is-1 branch."""

    horizon: int
    v: list[list[int]]

    @classmethod
    def fresh(cls, horizon: int) -> "ImplicationArray":
        v = [[1 << i, 0, 0, 1 << i] for i in range(horizon)]
        return cls(horizon, v)


@dataclass(frozen=True)
class ExtensibilityResult:
    """Outcome of the implication filter.

    status "contradiction" is a proof that no extension to the horizon
    graph avoids the forbidden cliques.  "extensible" just means the
    filter forced some links without hitting a contradiction, and
    "unknown" that it learned nothing; neither is a guarantee.
    """

    status: str
    forced: tuple[tuple[int, int], ...]


def extensibility_check(c: DistanceColoring, params: SearchParams,
                        pairs: Optional[Sequence[IncompleteClique]] = None,
                        horizon: Optional[int] = None) -> ExtensibilityResult:
    """Transitive-implication test for extensibility to the order-d graph."""
    if horizon is None:
        horizon = max(c.nbits, params.d - 1)
    try:
        singles = forced_links_state(c, params, horizon)
        if pairs is None:
            pairs = incomplete_cliques(c, params, horizon)
    except DeadBranchError:
        return ExtensibilityResult("contradiction", ())
    arr = ImplicationArray.fresh(horizon)
    v = arr.v
    color_of: dict[int, int] = {}
    for i in iter_bits(c.assigned.value):
        color_of[i] = c.colors.bit(i)
    for t, val in singles:
        # links already forced outright: make the other value self-refuting
        v[t][1 if val == 1 else 2] |= 1 << t

    def apply_colored(q: int, value: int) -> None:
        lo, hi = (0, 1) if value == 0 else (2, 3)
        add0, add1 = v[q][lo], v[q][hi]
        for i in range(horizon):
            vi = v[i]
            vi[0] |= add0
            vi[1] |= add1
            vi[2] |= add0
            vi[3] |= add1

    for q, value in color_of.items():
        apply_colored(q, value)

    two_pairs = [p for p in pairs if len(p.missing) == 2]
    for p in two_pairs:
        m1, m2 = p.missing
        v[m1][1 + p.color] |= 1 << m2
        v[m2][1 + p.color] |= 1 << m1

    forced: list[tuple[int, int]] = []
    changed = True
    while changed:
        changed = False
        for p in range(horizon):
            if p in color_of:
                continue
            vp = v[p]
            for slot_if, slot_then0, slot_then1 in ((0, 0, 1), (1, 2, 3),
                                                    (2, 0, 1), (3, 2, 3)):
                out_lo = 2 * (slot_if // 2)
                rest = vp[slot_if] & ~(1 << p)
                while rest:
                    i = (rest & -rest).bit_length() - 1
                    rest ^= 1 << i
                    before0, before1 = vp[out_lo], vp[out_lo + 1]
                    vp[out_lo] |= v[i][slot_then0]
                    vp[out_lo + 1] |= v[i][slot_then1]
                    if vp[out_lo] != before0 or vp[out_lo + 1] != before1:
                        changed = True
        for p in range(horizon):
            if p in color_of:
                continue
            vp = v[p]
            value: Optional[int] = None
            if vp[0] & vp[1]:
                value = 1
            if vp[2] & vp[3]:
                if value is not None:
                    return ExtensibilityResult("contradiction", tuple(forced))
                value = 0
            if value is not None:
                color_of[p] = value
                forced.append((p, value))
                apply_colored(p, value)
                changed = True
        for p in two_pairs:
            m1, m2 = p.missing
            if color_of.get(m1) == p.color and color_of.get(m2) == p.color:
                return ExtensibilityResult("contradiction", tuple(forced))
    status = "extensible" if forced else "unknown"
    return ExtensibilityResult(status, tuple(forced))


def pick_branch_link(c: DistanceColoring,
                     pairs: Sequence[IncompleteClique],
                     horizon: Optional[int] = None) -> Optional[int]:
    """Uncolored link appearing in the most incomplete cliques.

    Ties break toward the lowest index; with no statistics at all, the
    next uncolored link in increasing order is returned, or None when
    everything under the horizon is colored.
    """
    if horizon is None:
        horizon = c.nbits
    uncolored = ~c.assigned.value & ((1 << horizon) - 1)
    if uncolored == 0:
        return None
    counts: dict[int, int] = {}
    for p in pairs:
        for t in p.missing:
            if (uncolored >> t) & 1:
                counts[t] = counts.get(t, 0) + 1
    if not counts:
        return (uncolored & -uncolored).bit_length() - 1
    best = max(counts.items(), key=lambda kv: (kv[1], -kv[0]))
    return best[0]
