"""Non-search coloring generators: quadratic residues, degenerate
families with few distinct relabelings, block doubling, and the
four-copy expansion.

Degenerate colorings are the ones local search cannot reach: their
relabelings coincide, so they occupy tiny orbits far from the connected
bulk of the solution set.  Building them directly from the structure of
the unit group is the only practical way in.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterable, Optional

from sympy import isprime, primitive_root

from .cliques import CliqueEngine, max_clique_orders
from .coloring import DistanceColoring


def _class_rep(d: int, n: int) -> int:
    d %= n
    return min(d, n - d)


def _from_class_colors(n: int, colors: dict[int, int]) -> DistanceColoring:
    """Coloring of order n from colors keyed by class reps 1..n//2."""
    value = 0
    for d in range(1, n):
        if colors.get(_class_rep(d, n), 0):
            value |= 1 << (d - 1)
    return DistanceColoring.complete(n, value)


def paley(n: int) -> DistanceColoring:
    """Quadratic-residue coloring of prime order n with n = 1 mod 4."""
    if not isprime(n) or n % 4 != 1:
        raise ValueError("Paley coloring needs a prime n = 1 mod 4")
    residues = {(x * x) % n for x in range(1, n)}
    colors = {_class_rep(d, n): 1 for d in residues}
    return _from_class_colors(n, colors)


def degenerate_prime(n: int, q: Optional[int] = None
                     ) -> list[DistanceColoring]:
    """Degenerate colorings of prime order from powers of a generator.

    The first entry colors q^k by the parity of k, which leaves a single
    distinct relabeling up to complement.  When 3 divides n - 1 the six
    non-constant period-3 patterns follow, each with exactly 3 distinct
    relabelings.
    """
    if not isprime(n) or n < 5:
        raise ValueError("need an odd prime order of at least 5")
    if q is None:
        q = primitive_root(n)
    elif any(pow(q, (n - 1) // p, n) == 1 for p in _prime_factors(n - 1)):
        raise ValueError(f"{q} does not generate the units mod {n}")

    def pattern_coloring(period: int, pattern: tuple[int, ...]
                         ) -> DistanceColoring:
        colors = {}
        x = 1
        for k in range(n - 1):
            colors[_class_rep(x, n)] = pattern[k % period]
            x = (x * q) % n
        return _from_class_colors(n, colors)

    out = [pattern_coloring(2, (1, 0))]
    if (n - 1) % 3 == 0:
        for pattern in itertools.product((0, 1), repeat=3):
            if len(set(pattern)) > 1:
                out.append(pattern_coloring(3, pattern))
    return out


def _prime_factors(x: int) -> set[int]:
    out = set()
    d = 2
    while d * d <= x:
        while x % d == 0:
            out.add(d)
            x //= d
        d += 1
    if x > 1:
        out.add(x)
    return out


def degenerate_2p(p: int, q: Optional[int] = None
                  ) -> list[DistanceColoring]:
    """The 16 degenerate colorings of order 2p, p prime.

    Links fall into three orbits under relabeling: odd links coprime
    with 2p, even links, and the self-paired link p.  Each coloring is
    keyed by the colors of links 2, q, 2q and p: link 1 is pinned to
    color 0, and the colors of q and 2q decide whether the coprime and
    even chains alternate along powers of the generator.
    """
    if not isprime(p) or p < 3:
        raise ValueError("need an odd prime p")
    if p != 3 and p % 4 != 1:
        # -1 is an odd power of the generator when p = 3 mod 4, which
        # makes the alternating chains inconsistent
        raise ValueError("construction needs p = 1 mod 4 (or p = 3)")
    n = 2 * p
    if q is None:
        q = primitive_root(n)
    out = []
    for c2, cq, c2q, cp in itertools.product((0, 1), repeat=4):
        colors = {_class_rep(p, n): cp}
        flip_odd = cq
        flip_even = c2 ^ c2q
        x = 1
        for k in range(p - 1):
            colors[_class_rep(x, n)] = (flip_odd * k) % 2
            colors[_class_rep(2 * x, n)] = c2 ^ ((flip_even * k) % 2)
            x = (x * q) % n
        out.append(_from_class_colors(n, colors))
    return out


@dataclass(frozen=True)
class GroupStructure:
    """Unit-group data behind the quotient construction for order n.

    subgroup is the chosen G extended by -1; cosets list the elements of
    the quotient Q; orbits decompose link classes 1..n//2 under the full
    unit group, each orbit ordered by its canonical traversal.
    """

    n: int
    units: tuple[int, ...]
    subgroup: tuple[int, ...]
    cosets: tuple[tuple[int, ...], ...]
    generators: tuple[int, ...]
    orbits: tuple[tuple[int, ...], ...]

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    @property
    def generator_count(self) -> int:
        return len(self.generators)


def _closure(n: int, seed: Iterable[int]) -> set[int]:
    out = {1}
    frontier = [x % n for x in seed]
    out.update(frontier)
    while frontier:
        x = frontier.pop()
        for y in list(out):
            z = (x * y) % n
            if z not in out:
                out.add(z)
                frontier.append(z)
    return out


def group_structure(n: int, generators: Iterable[int] = ()) -> GroupStructure:
    """Orbit and quotient data for the unit group mod n over <G, -1>."""
    gens = list(generators)
    for g in gens:
        if math.gcd(g, n) != 1:
            raise ValueError("subgroup generators must be units")
    units = [x for x in range(1, n) if math.gcd(x, n) == 1]
    sub = _closure(n, gens + [n - 1])

    # cosets of the subgroup, labeled by their smallest member
    coset_of: dict[int, int] = {}
    cosets = []
    for u in units:
        if u not in coset_of:
            members = sorted((u * g) % n for g in sub)
            label = members[0]
            for m in members:
                coset_of[m] = label
            cosets.append(tuple(members))
    cosets.sort()
    labels = [c[0] for c in cosets]

    def q_mul(x: int, y: int) -> int:
        return coset_of[(x * y) % n]

    # minimal generating set of the abelian quotient: repeatedly take an
    # element of maximal order relative to the span so far
    span = {1}
    q_gens: list[int] = []
    while len(span) < len(cosets):
        best_e, best_t = None, 0
        for e in labels:
            if e in span:
                continue
            t, p = 1, e
            while p not in span:
                p = q_mul(p, e)
                t += 1
            if t > best_t:
                best_e, best_t = e, t
        q_gens.append(best_e)
        span = {coset_of[(x * y) % n] for x in span
                for y in _closure(n, [best_e])}

    # orbits of link classes under the whole unit group
    seen: set[int] = set()
    orbits = []
    for rep in range(1, n // 2 + 1):
        if rep in seen:
            continue
        orbit = []
        frontier = [rep]
        while frontier:
            d = frontier.pop(0)
            if d in seen:
                continue
            seen.add(d)
            orbit.append(d)
            for u in units:
                nd = _class_rep(u * d, n)
                if nd not in seen:
                    frontier.append(nd)
        orbits.append(tuple(orbit))

    return GroupStructure(n=n, units=tuple(units), subgroup=tuple(sorted(sub)),
                          cosets=tuple(cosets), generators=tuple(q_gens),
                          orbits=tuple(orbits))


def quotient_characters(gs: GroupStructure) -> list[dict[int, int]]:
    """All homomorphisms from the quotient to Z2, as coset-label maps."""
    n = gs.n
    coset_of = {}
    for c in gs.cosets:
        for m in c:
            coset_of[m] = c[0]
    out = []
    for bits in itertools.product((0, 1), repeat=len(gs.generators)):
        chi = {1: 0}
        frontier = [1]
        ok = True
        while frontier and ok:
            x = frontier.pop()
            for g, bit in zip(gs.generators, bits):
                y = coset_of[(x * g) % n]
                parity = chi[x] ^ bit
                if y in chi:
                    if chi[y] != parity:
                        ok = False
                        break
                else:
                    chi[y] = parity
                    frontier.append(y)
        if ok and len(chi) == len(gs.cosets):
            out.append(chi)
    return out


def degenerate_quotient(n: int, generators: Iterable[int] = (), *,
                        max_orbits: int = 22, max_ab: int = 20
                        ) -> list[DistanceColoring]:
    """Partially degenerate colorings from the quotient construction.

    Each output assigns one color per link orbit and lets every quotient
    generator either preserve or complement colors along its action, so
    any relabeling maps the coloring to itself or to its complement on
    the orbits the character covers.  Caps bound the assignment grid.
    """
    gs = group_structure(n, generators)
    chis = quotient_characters(gs)
    a = gs.orbit_count
    b = gs.generator_count
    if len(chis) == 1:
        if a > max_orbits:
            raise ValueError(f"{a} orbits exceeds the cap {max_orbits}")
    elif a + b > max_ab:
        raise ValueError(f"a + b = {a + b} exceeds the cap {max_ab}")

    n_units = gs.units
    coset_of = {}
    for c in gs.cosets:
        for m in c:
            coset_of[m] = c[0]

    # canonical traversal parity: first unit that reaches each class
    # from its orbit representative decides the sign
    reach: list[dict[int, int]] = []
    for orbit in gs.orbits:
        rep = orbit[0]
        via = {}
        for u in n_units:
            d = _class_rep(u * rep, n)
            if d not in via:
                via[d] = coset_of[u]
        reach.append(via)

    out = []
    seen_masks = set()
    for inits in itertools.product((0, 1), repeat=a):
        for chi in chis:
            colors = {}
            for i, orbit in enumerate(gs.orbits):
                for d in orbit:
                    colors[d] = inits[i] ^ chi[reach[i][d]]
            c = _from_class_colors(n, colors)
            if c.colors.value not in seen_masks:
                seen_masks.add(c.colors.value)
                out.append(c)
    return out


def block_double(a: DistanceColoring, diag: int = 1) -> DistanceColoring:
    """Order-2n coloring with block adjacency (A, ~A / ~A, A).

    Even distances copy A, odd distances copy its complement, and the
    self-paired distance n takes diag.  The two n-vertex residue blocks
    each induce a relabeling of A.
    """
    if not a.is_cyclic():
        raise ValueError("block doubling needs a complete cyclic coloring")
    n = a.order
    colors = {}
    for d in range(1, n + 1):
        if d == n:
            colors[d] = diag
        elif d % 2 == 0:
            colors[d] = a.colors.bit(_class_rep(d, n) - 1)
        else:
            colors[d] = 1 - a.colors.bit(_class_rep(d, n) - 1)
    return _from_class_colors(2 * n, colors)


def block_restriction(c: DistanceColoring, stride: int) -> DistanceColoring:
    """The coloring induced on one residue-class block, relabeled back.

    For stride w, vertices {0, w, 2w, ...} of an order w*m coloring form
    an order-m cyclic coloring whose distance i maps to distance w*i of
    c, a relabeling of the block content by w mod m; undoing it recovers
    the embedded coloring exactly.
    """
    if c.order % stride != 0:
        raise ValueError("stride must divide the order")
    m = c.order // stride
    if math.gcd(stride, m) != 1:
        raise ValueError("stride must be coprime with the block order")
    inv = pow(stride, -1, m)
    colors = {}
    for i in range(1, m // 2 + 1):
        d = _class_rep(stride * _class_rep(inv * i, m), c.order)
        colors[i] = c.colors.bit(d - 1)
    return _from_class_colors(m, colors)


def quadruple_candidates(c: DistanceColoring, k: int, j: int,
                         budget: Optional[int] = None,
                         rng: Optional[random.Random] = None
                         ) -> list[DistanceColoring]:
    """Valid (k, j) colorings of order 4n built from four copies of c.

    Distances divisible by 4 are pinned so each residue-class block
    reproduces c; the remaining inter-block distance classes are free.
    All assignments are tried when the budget covers 2^f, otherwise
    budget random ones.  Only candidates passing the clique check in
    either color orientation are returned.
    """
    if not c.is_complete():
        raise ValueError("need a complete source coloring")
    n = c.order
    n4 = 4 * n
    free_sites = [d for d in range(1, 2 * n + 1) if d % 4 != 0]
    fixed = {}
    for d in range(4, 2 * n + 1, 4):
        fixed[d] = c.colors.bit(_class_rep(d // 4, n) - 1)
    total = 1 << len(free_sites)
    if budget is None:
        budget = total
    if budget <= 0:
        return []

    def build(assign: int) -> DistanceColoring:
        colors = dict(fixed)
        for idx, d in enumerate(free_sites):
            colors[d] = (assign >> idx) & 1
        return _from_class_colors(n4, colors)

    if budget >= total:
        assignments = range(total)
    else:
        rng = rng or random.Random(0)
        assignments = (rng.getrandbits(len(free_sites))
                       for _ in range(budget))

    out = []
    seen = set()
    for assign in assignments:
        cand = build(assign)
        if cand.colors.value in seen:
            continue
        seen.add(cand.colors.value)
        o0, o1 = max_clique_orders(cand)
        if (o0 < k and o1 < j) or (o1 < k and o0 < j):
            out.append(cand)
    return out
