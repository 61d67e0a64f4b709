import random

import pytest

import oracles
from ramseykit.cliques import is_valid_coloring
from ramseykit.coloring import DistanceColoring, SearchParams
from ramseykit.propagate import (DeadBranchError, ExtensibilityResult,
                                 extensibility_check, forced_links,
                                 forced_links_state, incomplete_cliques,
                                 pick_branch_link)

P33 = SearchParams(3, 3, s=2, d=5)


def pentagon_prefix():
    # distances 1..3 colored 0, 1, 1 on the way to the pentagon
    return DistanceColoring.partial(4, 0b110, 0b111)


def test_forced_links_after_each_assignment():
    c = pentagon_prefix()
    # the triangle 0-2-4 needs only the link at distance 4, and it hangs
    # off the distance-2 link
    assert forced_links(c, 1, 1, P33, horizon=4) == [(3, 0)]
    # nothing new hangs off the distance-3 link itself
    assert forced_links(c, 2, 1, P33, horizon=4) == []
    assert forced_links(c, 0, 0, P33, horizon=4) == []


def test_forced_links_state_matches_oracle_on_pentagon():
    c = pentagon_prefix()
    got = forced_links_state(c, P33, horizon=4)
    assert got == [(3, 0)]
    assert got == oracles.forced_links_state(c, P33, horizon=4)


def test_forced_links_wrong_link():
    with pytest.raises(ValueError):
        forced_links(pentagon_prefix(), 3, 0, P33, horizon=4)
    with pytest.raises(ValueError):
        forced_links(pentagon_prefix(), 0, 1, P33, horizon=4)


def random_valid_partial(rng, order, k, j):
    while True:
        value = rng.randrange(1 << (order - 1))
        assigned = rng.randrange(1 << (order - 1))
        c = DistanceColoring.partial(order, value & assigned, assigned)
        from ramseykit.cliques import rebuild_scan
        if rebuild_scan(c, k, j) is None:
            return c


def test_forced_links_state_matches_oracle_random():
    rng = random.Random(7)
    dead = 0
    for _ in range(40):
        order = rng.randrange(4, 9)
        k, j = rng.choice([(3, 3), (3, 4), (4, 4)])
        params = SearchParams(k, j, s=2, d=order + 1)
        c = random_valid_partial(rng, order, k, j)
        horizon = order
        try:
            got = forced_links_state(c, params, horizon=horizon)
        except DeadBranchError:
            got = None
            dead += 1
        want = oracles.forced_links_state(c, params, horizon=horizon)
        assert got == want
    assert dead  # the sample should include contradictory states


def test_forced_links_dead_branch():
    # a completed color-1 triangle through the probed link
    c = DistanceColoring.partial(4, 0b111, 0b111)
    with pytest.raises(DeadBranchError):
        forced_links(c, 2, 1, P33, horizon=4)


def test_incomplete_cliques_match_oracle():
    rng = random.Random(19)
    for _ in range(30):
        order = rng.randrange(4, 9)
        k, j = rng.choice([(3, 3), (3, 4), (4, 4)])
        params = SearchParams(k, j, s=2, d=order + 1)
        c = random_valid_partial(rng, order, k, j)
        horizon = order
        got = {
            (p.color,) + p.missing
            for p in incomplete_cliques(c, params, horizon=horizon)
            if len(p.missing) == 2
        }
        want = oracles.incomplete_pairs(c, params, horizon=horizon)
        assert got == want


def test_incomplete_cliques_vertices_field():
    c = pentagon_prefix()
    pairs = incomplete_cliques(c, P33, horizon=6)
    for p in pairs:
        assert p.vertices.bit(0)
        for t in p.missing:
            assert p.vertices.bit(t + 1)


def test_incomplete_triples():
    # all of distances 1..3 colored 1 at order 4, looking for forbidden
    # triangles out to order 7: vertices 4,5,6 pairwise linked in color 1
    # would close several cliques with vertex 0 at once
    c = DistanceColoring.partial(4, 0b111, 0b111)
    params = SearchParams(3, 9, s=2, d=8)
    trip = [p for p in incomplete_cliques(c, params, horizon=7, max_gap=3)
            if len(p.missing) == 3]
    assert trip == []  # color 1 alone cannot force triples for color 0
    params2 = SearchParams(3, 4, s=2, d=8)
    c2 = DistanceColoring.partial(4, 0, 0b111)
    trip2 = [p for p in incomplete_cliques(c2, params2, horizon=7, max_gap=3)
             if len(p.missing) == 3]
    # distances 4..7 unassigned; any three of them pairwise at distance
    # colored 0 ... with all links 0 the inner distances 1..3 are color 0,
    # so triples like (3,4,5) appear
    assert trip2
    for p in trip2:
        assert p.color == 0
        assert len(set(p.missing)) == 3


def test_extensibility_contradiction_is_sound():
    rng = random.Random(29)
    checked = 0
    for _ in range(60):
        order = rng.randrange(4, 8)
        k, j = rng.choice([(3, 3), (3, 4)])
        target = order + rng.randrange(1, 3)
        params = SearchParams(k, j, s=2, d=target)
        c = random_valid_partial(rng, order, k, j)
        res = extensibility_check(c, params, horizon=target - 1)
        if res.status == "contradiction":
            checked += 1
            assert not oracles.can_reach_order(c, k, j, target)
    assert checked  # the sample must exercise the contradiction path


def test_extensibility_forced_links_are_sound():
    rng = random.Random(31)
    checked = 0
    for _ in range(60):
        order = rng.randrange(4, 8)
        k, j = rng.choice([(3, 3), (3, 4)])
        target = order + rng.randrange(1, 3)
        params = SearchParams(k, j, s=2, d=target)
        c = random_valid_partial(rng, order, k, j)
        res = extensibility_check(c, params, horizon=target - 1)
        if res.status != "extensible":
            continue
        if not oracles.can_reach_order(c, k, j, target):
            continue
        for t, val in res.forced:
            # val is the forced color; the opposite choice must close off
            # every valid completion
            bad_colors = c.colors.value | ((1 - val) << t)
            wrong = DistanceColoring.partial(
                target, bad_colors, c.assigned.value | (1 << t))
            checked += 1
            assert not oracles.can_reach_order(wrong, k, j, target)
    assert checked


def test_extensibility_never_contradicts_valid_prefixes():
    # prefixes of a coloring that stays valid out to the horizon must
    # never come back as contradictions
    pent = DistanceColoring.complete(5, 0b0110)
    for m in range(2, 6):
        res = extensibility_check(pent.prefix(m), P33, horizon=4)
        assert res.status != "contradiction"


def test_pick_branch_link_prefers_busy_links():
    c = DistanceColoring.partial(4, 0, 0b111)
    params = SearchParams(3, 4, s=2, d=8)
    pairs = incomplete_cliques(c, params, horizon=7, max_gap=3)
    pick = pick_branch_link(c, pairs, horizon=7)
    counts = {}
    for p in pairs:
        for t in p.missing:
            counts[t] = counts.get(t, 0) + 1
    top = max(counts.values())
    assert counts[pick] == top
    assert pick == min(t for t, n in counts.items() if n == top)


def test_pick_branch_link_fallback():
    c = DistanceColoring.partial(6, 0b00101, 0b10111)
    assert pick_branch_link(c, [], horizon=5) == 3
    full = DistanceColoring.complete(4, 0b101)
    assert pick_branch_link(full, [], horizon=3) is None
