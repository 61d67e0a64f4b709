"""Local search directly on symmetric bitmasks.

A cyclic coloring of order N+1 is an N-bit palindromic mask, so the
search space supports three cheap moves: flipping a mirrored bit pair,
reflecting to a different length, and relabeling.  Starting from valid
seeds, the loop breeds candidates by combining these moves, discards
most invalid ones through a list of 1-incomplete cliques kept from the
source coloring, and full-checks the rest.  A slowly rising order floor
keeps the pool from wandering into short colorings forever, which makes
the search terminate on its own.
"""

from __future__ import annotations

import random
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .cliques import CliqueEngine, is_valid_coloring
from .coloring import (DistanceColoring, distinct_relabelings, relabel,
                       relabel_factors)


def _pair_mask(nbits: int, a: int) -> int:
    # single bit at the exact center, two bits otherwise
    return (1 << a) | (1 << (nbits - 1 - a))


def _reflect_value(value: int, nbits: int, new_nbits: int) -> int:
    head = (new_nbits + 1) // 2
    tail = new_nbits // 2
    return (value & ((1 << head) - 1)) | ((value >> (nbits - tail)) << head)


@dataclass(frozen=True)
class SymmetricMask:
    """An nbits-wide palindromic mask, i.e. a cyclic coloring of order nbits+1."""

    nbits: int
    value: int

    def __post_init__(self):
        if self.nbits < 1:
            raise ValueError("mask needs at least one bit")
        if not 0 <= self.value < (1 << self.nbits):
            raise ValueError("value does not fit the bit length")
        v = self.value
        for a in range(self.nbits // 2):
            if ((v >> a) ^ (v >> (self.nbits - 1 - a))) & 1:
                raise ValueError("mask is not symmetric")

    @classmethod
    def from_coloring(cls, c: DistanceColoring) -> "SymmetricMask":
        if not c.is_cyclic():
            raise ValueError("coloring is not cyclic")
        return cls(c.nbits, c.colors.value)

    def coloring(self) -> DistanceColoring:
        return DistanceColoring.complete(self.nbits + 1, self.value)

    @property
    def order(self) -> int:
        return self.nbits + 1

    @property
    def site_count(self) -> int:
        return (self.nbits + 1) // 2

    def sites(self) -> range:
        return range(self.site_count)

    def bit(self, a: int) -> int:
        return (self.value >> a) & 1

    def bit_flip(self, a: int) -> "SymmetricMask":
        """Flip bits a and nbits-1-a (one bit when they coincide)."""
        if not 0 <= 2 * a <= self.nbits:
            raise ValueError("flip site out of range")
        return SymmetricMask(self.nbits, self.value ^ _pair_mask(self.nbits, a))

    def reflect(self, new_nbits: int) -> "SymmetricMask":
        """First ceil(n/2) bits joined with the last floor(n/2) bits.

        Shrinks or grows the mask to new_nbits; growing is capped at
        doubling, where head and tail both cover the whole source.
        """
        if new_nbits == self.nbits:
            raise ValueError("reflection must change the length")
        if not 2 <= new_nbits <= 2 * self.nbits:
            raise ValueError("reflected length out of range")
        return SymmetricMask(new_nbits,
                             _reflect_value(self.value, self.nbits, new_nbits))

    def relabel(self, m: int) -> "SymmetricMask":
        return SymmetricMask.from_coloring(relabel(self.coloring(), m))


@dataclass(frozen=True)
class PrevetEntry:
    """A clique one link short of being forbidden, as a raw distance mask.

    mask holds bit d-1 for every pairwise distance d of the would-be
    clique, including the one link whose color currently breaks it.  The
    entry fires on any candidate that colors all those distances with the
    clique color, which is a true forbidden clique no matter where the
    candidate came from, so firing always justifies a discard.
    """

    color: int
    mask: int
    width: int      # largest distance involved
    order: int      # order of the clique once completed
    above: int      # set bits beyond the halfway position, the thinning rank

    def fires(self, value: int) -> bool:
        if self.color:
            return self.mask & ~value == 0
        return self.mask & value == 0


@dataclass(frozen=True)
class PrevetList:
    """Thinned 1-incomplete clique list plus the flip sites they protect."""

    entries: tuple[PrevetEntry, ...]
    excluded_sites: frozenset[int]
    source_nbits: int

    def discard(self, nbits: int, value: int) -> bool:
        """True when some listed clique is complete in the candidate."""
        for e in self.entries:
            if e.width <= nbits and e.fires(value):
                return True
        return False


def build_prevet(source: Union[DistanceColoring, SymmetricMask], k: int,
                 j: int, *, keep: int = 1000,
                 collect_cap: int = 20000) -> PrevetList:
    """List 1-incomplete cliques of the source coloring.

    For every submaximal clique S through vertex 0 and every vertex V
    whose link to 0 has the opposite color but whose links to the rest of
    S all match, the distances of S plus V become one entry.  Restricting
    each listing to vertices below the through-link lists every clique
    exactly once.  The list is thinned to the entries with fewest
    distances beyond the halfway position, which transfer best across
    reflections, with larger cliques first among ties.
    """
    c = source.coloring() if isinstance(source, SymmetricMask) else source
    if not c.is_complete():
        raise ValueError("prevet list needs a complete coloring")
    nbits = c.nbits
    order = c.order
    colors = c.colors.value
    half = nbits // 2

    adj = [[0, 0] for _ in range(order)]
    for d in range(1, order):
        cc = (colors >> (d - 1)) & 1
        for u in range(order - d):
            adj[u][cc] |= 1 << (u + d)
            adj[u + d][cc] |= 1 << u

    eng = CliqueEngine.from_coloring(c)
    entries: list[PrevetEntry] = []
    excluded: set[int] = set()
    for color in (0, 1):
        need = k if color == 0 else j
        sub = need - 1
        root_opp = adj[0][1 - color]
        for b in range(nbits):
            if ((colors >> b) & 1) != color:
                continue
            if sub == 2:
                # submaximal cliques are single links, nothing to list
                recs = [(2, 1 << b)]
            else:
                recs, _ = eng.list_through(b, color, sub,
                                           restrict=(1 << b) - 1)
            for _, links in recs:
                verts = 1 | (links << 1)
                vlist = [t + 1 for t in range(b + 1) if (links >> t) & 1]
                base = 0
                for i, u in enumerate(vlist):
                    base |= 1 << (u - 1)
                    for w in vlist[:i]:
                        base |= 1 << (u - w - 1)
                cand_v = root_opp & ~verts
                for u in vlist:
                    cand_v &= adj[u][color]
                while cand_v:
                    vv = (cand_v & -cand_v).bit_length() - 1
                    cand_v ^= 1 << vv
                    mask = base | (1 << (vv - 1))
                    for u in vlist:
                        mask |= 1 << (abs(vv - u) - 1)
                    width = max(vlist[-1], vv)
                    entries.append(PrevetEntry(
                        color, mask, width, need,
                        above=bin(mask >> half).count("1")))
                    if width <= half:
                        excluded.add(vv - 1)
            if len(entries) >= collect_cap:
                break
    entries.sort(key=lambda e: (e.above, -e.order))
    return PrevetList(tuple(entries[:keep]), frozenset(excluded), nbits)


def flip_site_scores(m: SymmetricMask) -> list[int]:
    """Monochromatic triangles created by flipping each site.

    Every new triangle runs through a flipped link, so counting the ones
    through the representative link (0, site+1) after the flip scores the
    site in O(order) time.
    """
    order = m.nbits + 1
    half = order // 2
    colr = [0] * (half + 1)
    for d in range(1, half + 1):
        colr[d] = (m.value >> (d - 1)) & 1
    cls = [min(x, order - x) for x in range(order)]
    scores = []
    for a in m.sites():
        dd = a + 1
        target = 1 - colr[dd]
        count = 0
        for w in range(1, order):
            if w == dd:
                continue
            d1 = cls[w]
            d2 = cls[(w - dd) % order]
            if (colr[d1] ^ (d1 == dd)) == target and \
               (colr[d2] ^ (d2 == dd)) == target:
                count += 1
        scores.append(count)
    return scores


def best_flip_sites(m: SymmetricMask,
                    exclude: frozenset[int] = frozenset()) -> list[int]:
    """The nbits/8 lowest-scoring flip sites, excluded ones removed."""
    scores = flip_site_scores(m)
    pool = sorted((s for s in m.sites() if s not in exclude),
                  key=lambda s: scores[s])
    return pool[:max(3, m.nbits // 8)]


@dataclass(frozen=True)
class CyclicSearchConfig:
    """Knobs of the batch local search.

    l_min None starts the order floor at the shortest seed; fixed_l_min
    freezes it there, which turns the search into an enumerator at that
    order range.  The spread_* counts control how many relabel factors
    and reflection lengths are sampled per source, since the full move
    grid is far too large to enumerate.
    """

    k: int
    j: int
    l_min: Optional[int] = None
    fixed_l_min: bool = False
    batch: int = 100
    raise_after: int = 750
    grow_span: int = 12
    spread_relabels: int = 6
    spread_reflects: int = 8
    flip_sample: int = 20
    diversify: int = 150
    prevet_keep: int = 1000
    prevet_collect_cap: int = 3000
    use_prevet: bool = True
    time_budget: Optional[float] = None
    max_processed: Optional[int] = None
    rng_seed: int = 0


@dataclass
class CyclicSearchStats:
    processed: int = 0
    generated: int = 0
    prevetted: int = 0
    tested: int = 0
    classes: int = 0


@dataclass
class CyclicSearchResult:
    """Valid colorings found, grouped by order, with run counters.

    colorings holds every distinct mask, including all relabelings of
    each discovered class, so counts are per mask rather than per
    isomorphism class; classes in stats counts the orbits.
    """

    k: int
    j: int
    l_min: int
    colorings: dict[int, list[int]] = field(default_factory=dict)
    stats: CyclicSearchStats = field(default_factory=CyclicSearchStats)

    def count(self, min_order: int = 0) -> int:
        return sum(len(v) for o, v in self.colorings.items()
                   if o >= min_order)


class _Search:

    def __init__(self, cfg: CyclicSearchConfig):
        self.cfg = cfg
        self.rng = random.Random(cfg.rng_seed)
        self.pool: deque[SymmetricMask] = deque()
        self.known: set[tuple[int, int]] = set()
        self.tried: set[tuple[int, int]] = set()
        self.expanded: set[tuple[int, int]] = set()
        self.results: dict[int, set[int]] = {}
        self.stats = CyclicSearchStats()
        self.l_min = 0
        self.n_max = 0

    def admit(self, nbits: int, value: int) -> bool:
        """Record a valid coloring and its whole relabeling orbit."""
        key = (nbits, value)
        if key in self.known:
            return False
        order = nbits + 1
        orbit = distinct_relabelings(DistanceColoring.complete(order, value))
        dest = self.results.setdefault(order, set())
        for v in orbit:
            self.known.add((nbits, v))
            dest.add(v)
        self.stats.classes += 1
        self.pool.appendleft(SymmetricMask(nbits, value))
        self.n_max = max(self.n_max, order)
        return True

    def consider(self, nbits: int, value: int,
                 pv: Optional[PrevetList]) -> None:
        self.stats.generated += 1
        key = (nbits, value)
        if key in self.known or key in self.tried:
            return
        if pv is not None and pv.discard(nbits, value):
            self.stats.prevetted += 1
            return
        if len(self.tried) > 300000:
            self.tried.clear()
        self.tried.add(key)
        self.stats.tested += 1
        c = DistanceColoring.complete(nbits + 1, value)
        if is_valid_coloring(c, self.cfg.k, self.cfg.j):
            self.admit(nbits, value)

    def reflect_lengths(self, nbits: int) -> list[int]:
        lo = max(2, self.l_min - 1)
        hi = min(2 * nbits, nbits + self.cfg.grow_span)
        near = [n for n in range(nbits - 2, nbits + 3)
                if n != nbits and lo <= n <= hi]
        wide = [n for n in range(lo, hi + 1) if n != nbits]
        if len(wide) > self.cfg.spread_reflects:
            wide = self.rng.sample(wide, self.cfg.spread_reflects)
        return sorted(set(near) | set(wide))

    def source_prevet(self, m: SymmetricMask) -> Optional[PrevetList]:
        if not self.cfg.use_prevet:
            return None
        return build_prevet(m, self.cfg.k, self.cfg.j,
                            keep=self.cfg.prevet_keep,
                            collect_cap=self.cfg.prevet_collect_cap)

    def expand(self, m: SymmetricMask) -> Optional[PrevetList]:
        """Step-3 candidates: two local flips, or relabel+reflect+one flip.

        The flip-only part is deterministic, so it runs on the first
        visit of a source only; revisits just resample the randomized
        relabel and reflection grid.
        """
        cfg = self.cfg
        nbits = m.nbits
        pv = self.source_prevet(m)
        key = (nbits, m.value)
        if key not in self.expanded:
            self.expanded.add(key)
            sites = list(m.sites())
            for a in sites:
                va = m.value ^ _pair_mask(nbits, a)
                self.consider(nbits, va, pv)
                for b in sites[a + 1:]:
                    self.consider(nbits, va ^ _pair_mask(nbits, b), pv)

        factors = relabel_factors(m.order)
        ms = [1] + self.rng.sample(factors[1:],
                                   min(cfg.spread_relabels, len(factors) - 1))
        for factor in ms:
            base = m if factor == 1 else m.relabel(factor)
            bpv = pv if factor == 1 else self.source_prevet(base)
            for new_nbits in self.reflect_lengths(nbits):
                rv = _reflect_value(base.value, nbits, new_nbits)
                self.consider(new_nbits, rv, bpv)
                rs = list(range((new_nbits + 1) // 2))
                if len(rs) > cfg.flip_sample:
                    rs = self.rng.sample(rs, cfg.flip_sample)
                for a in rs:
                    self.consider(new_nbits, rv ^ _pair_mask(new_nbits, a),
                                  bpv)
        return pv

    def diversify(self, m: SymmetricMask,
                  pv: Optional[PrevetList]) -> None:
        """Step-5 candidates: relabel, reflect and two or three scored flips.

        Flip sites come from the lowest triangle-creation scores of each
        round's base, scored once per base rather than per candidate.
        """
        cfg = self.cfg
        exclude = pv.excluded_sites if pv is not None else frozenset()
        factors = relabel_factors(m.order)
        rounds = max(1, cfg.diversify // 15)
        for _ in range(rounds):
            base = m.relabel(self.rng.choice(factors))
            lengths = self.reflect_lengths(m.nbits) or [m.nbits]
            new_nbits = self.rng.choice(lengths)
            if new_nbits != m.nbits:
                bv = _reflect_value(base.value, m.nbits, new_nbits)
            else:
                bv = base.value
            good = best_flip_sites(SymmetricMask(new_nbits, bv),
                                   exclude if new_nbits == m.nbits
                                   else frozenset())
            for _ in range(15):
                v = bv
                for _ in range(self.rng.randint(2, 3)):
                    v ^= _pair_mask(new_nbits, self.rng.choice(good))
                self.consider(new_nbits, v, pv)

    def out_of_budget(self, start: float) -> bool:
        cfg = self.cfg
        if cfg.time_budget is not None and \
                time.monotonic() - start > cfg.time_budget:
            return True
        return cfg.max_processed is not None and \
            self.stats.processed >= cfg.max_processed

    def run(self, seeds: list[SymmetricMask], progress) -> CyclicSearchResult:
        cfg = self.cfg
        for m in seeds:
            if not is_valid_coloring(m.coloring(), cfg.k, cfg.j):
                raise ValueError("seed fails the clique check")
        self.l_min = cfg.l_min if cfg.l_min is not None else \
            min((m.order for m in seeds), default=0)
        for m in seeds:
            self.admit(m.nbits, m.value)
        self.n_max = max((m.order for m in seeds), default=0)
        stall = 0
        start = time.monotonic()
        while self.pool and not self.out_of_budget(start):
            batch = []
            while self.pool and len(batch) < cfg.batch:
                m = self.pool.popleft()
                if m.order >= self.l_min:
                    batch.append(m)
            if not batch:
                break
            before = self.n_max
            vets = []
            for m in batch:
                vets.append(self.expand(m))
                self.stats.processed += 1
                if self.out_of_budget(start):
                    break
            if self.n_max <= before and not self.out_of_budget(start):
                for m, pv in zip(batch, vets):
                    self.diversify(m, pv)
            # processed sources rotate to the back and stay available;
            # the rising floor is what eventually drains the pool
            self.pool.extend(batch)
            if self.n_max > before:
                stall = 0
                if not cfg.fixed_l_min:
                    self.l_min = max(self.l_min, self.n_max - 8)
            else:
                stall += len(batch)
                while stall >= cfg.raise_after:
                    stall -= cfg.raise_after
                    if not cfg.fixed_l_min:
                        self.l_min += 1
            if progress is not None:
                progress(self.stats, self.l_min, len(self.pool))
        out = CyclicSearchResult(cfg.k, cfg.j, self.l_min, stats=self.stats)
        for order, vals in sorted(self.results.items()):
            out.colorings[order] = sorted(vals)
        return out


def cyclic_local_search(seeds: Iterable[Union[SymmetricMask,
                                              DistanceColoring]],
                        cfg: CyclicSearchConfig,
                        progress=None) -> CyclicSearchResult:
    """Batch local search over symmetric masks seeded with valid colorings.

    Seeds must pass the (k, j) clique check, color 0 forbidding order k
    and color 1 forbidding order j.  Every discovered class lands in the
    result together with all its relabelings; the pool floor l_min rises
    by batch yield as configured.  Runs until the pool drains or a
    time / processed-count budget is hit.
    """
    norm = [m if isinstance(m, SymmetricMask) else SymmetricMask.from_coloring(m)
            for m in seeds]
    return _Search(cfg).run(norm, progress)
