"""Exhaustive enumeration of valid distance colorings.

The search appends links in increasing distance order, so the rooted
clique check at each new link is a complete validity test and every tree
node is itself a complete valid coloring of its order.  Forced links
discovered along the way are remembered as pending constraints: when the
frontier reaches a forced bit only the forced color is tried, which skips
branches that would fail their own rooted check and therefore changes no
census count.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .bitmask import BitMask, reverse_bits
from .cliques import CliqueEngine, rebuild_scan
from .coloring import DistanceColoring, SearchParams, Signature
from .propagate import extensibility_check


@dataclass
class Census:
    """Per-order population of valid colorings from one enumeration run.

    counts maps order to the number of complete valid colorings found;
    colorings retains the actual bit masks for orders >= d.  With reduced
    set, bit 0 was pinned to color 0, counting diagonal colorings up to
    the global color complement.
    """

    k: int
    j: int
    d: int
    reduced: bool
    counts: dict[int, int] = field(default_factory=dict)
    colorings: dict[int, list[int]] = field(default_factory=dict)
    longest: int = 0
    complete: bool = True
    tests: int = 0

    def merge(self, other: "Census") -> None:
        if (self.k, self.j, self.d, self.reduced) != (
                other.k, other.j, other.d, other.reduced):
            raise ValueError("census parameters differ")
        for order, n in other.counts.items():
            self.counts[order] = self.counts.get(order, 0) + n
        for order, vals in other.colorings.items():
            self.colorings.setdefault(order, []).extend(vals)
        self.longest = max(self.longest, other.longest)
        self.complete = self.complete and other.complete
        self.tests += other.tests


@dataclass(frozen=True)
class SignatureOutcome:
    """Result of extending one signature toward order d.

    counts and colorings cover orders above the signature only.  aborted
    means the per-signature test budget ran out; the signature is then
    treated as not extensible regardless of what a longer run might find.
    """

    signature: Signature
    reached_d: bool
    max_order: int
    tests_used: int
    aborted: bool
    counts: dict[int, int]
    colorings: dict[int, list[int]]


class _Abort(Exception):
    pass


class _DoneAtD(Exception):
    pass


class _Runner:
    """One depth-first enumeration from a fixed prefix."""

    def __init__(self, params: SearchParams, *, width: int = 64,
                 reduce_diagonal: bool = False, forcing: bool = True,
                 forcing_max_need: int = 6,
                 threshold: Optional[int] = None, until_d: bool = False,
                 retain_from: Optional[int] = None,
                 stop_bit: Optional[int] = None,
                 lookahead_every: int = 0):
        self.params = params
        self.need = (params.k, params.j)
        self.width = width
        self.eng = CliqueEngine(width, width + 1)
        self.reduce_diagonal = reduce_diagonal
        self.forcing = forcing
        self.forcing_max_need = forcing_max_need
        self.threshold = math.inf if threshold is None else threshold
        self.until_d = until_d
        self.retain_from = params.d if retain_from is None else retain_from
        self.stop_bit = stop_bit
        self.lookahead_every = lookahead_every
        self.pending: dict[int, list[int]] = {}
        self.counts: dict[int, int] = {}
        self.colorings: dict[int, list[int]] = {}
        self.tests = 0
        self.longest = 0
        self.reached_d = False
        self.aborted = False

    def _grow(self) -> None:
        width = self.width * 2
        eng = CliqueEngine(width, width + 1)
        eng.m[0] = self.eng.m[0]
        eng.m[1] = self.eng.m[1]
        eng.rev[0] = reverse_bits(eng.m[0], width)
        eng.rev[1] = reverse_bits(eng.m[1], width)
        self.eng, self.width = eng, width

    def _forced_candidates(self, bit: int, color: int) -> int:
        """Bits forced to 1-color by one-short cliques through bit."""
        eng = self.eng
        uncolored = ~(eng.m[0] | eng.m[1]) & eng.full
        need = self.need[color]
        if need == 3:
            return uncolored & eng.invert(color, bit)
        pairs, _ = eng.list_through(bit, color, need - 1)
        out = 0
        for order, links in pairs:
            if order != need - 1:
                continue
            cand = uncolored
            rest = links
            while rest and cand:
                pos = (rest & -rest).bit_length() - 1
                rest ^= 1 << pos
                cand &= eng.invert(color, pos)
            out |= cand
            uncolored &= ~cand
        return out

    def _push_forcings(self, bit: int, color: int,
                       undo: list[tuple[int, int]]) -> None:
        # listing near-forbidden cliques in the denser color costs more
        # than the rare forcings it finds
        if self.need[color] > self.forcing_max_need:
            return
        cand = self._forced_candidates(bit, color)
        want = 1 - color
        pending = self.pending
        while cand:
            t = (cand & -cand).bit_length() - 1
            cand ^= 1 << t
            entry = pending.get(t)
            if entry is None:
                entry = [0, 0]
                pending[t] = entry
            entry[want] += 1
            undo.append((t, want))

    def _pop_forcings(self, undo: list[tuple[int, int]]) -> None:
        pending = self.pending
        for t, want in undo:
            entry = pending[t]
            entry[want] -= 1
            if entry[0] == 0 and entry[1] == 0:
                del pending[t]

    def _note(self, order: int, value: int) -> None:
        self.counts[order] = self.counts.get(order, 0) + 1
        if order >= self.retain_from:
            self.colorings.setdefault(order, []).append(value)
        if order > self.longest:
            self.longest = order
        if order >= self.params.d:
            self.reached_d = True
            if self.until_d:
                raise _DoneAtD

    def _trials(self, bit: int) -> tuple[int, ...]:
        if self.reduce_diagonal and bit == 0:
            return (0,)
        entry = self.pending.get(bit)
        if entry is None:
            return (0, 1)
        if entry[0] and entry[1]:
            return ()
        return (0,) if entry[0] else (1,)

    def _rec(self, bit: int, value: int) -> None:
        if self.stop_bit is not None and bit >= self.stop_bit:
            return
        if bit >= self.width:
            self._grow()
        eng = self.eng
        need = self.need
        order = bit + 2
        for color in self._trials(bit):
            self.tests += 1
            if self.tests > self.threshold:
                raise _Abort
            eng.assign(bit, color)
            if eng.violation_through(bit, color, need[color]) is None:
                grown = value | (color << bit)
                self._note(order, grown)
                undo: list[tuple[int, int]] = []
                if self.forcing:
                    self._push_forcings(bit, color, undo)
                if not self._lookahead_prunes(bit, grown):
                    self._rec(bit + 1, grown)
                if undo:
                    self._pop_forcings(undo)
            eng.unassign(bit, color)

    def _lookahead_prunes(self, bit: int, value: int) -> bool:
        every = self.lookahead_every
        if not every or (bit + 1) % every:
            return False
        order = bit + 2
        if order >= self.params.d:
            return False
        assigned = (1 << (bit + 1)) - 1
        c = DistanceColoring.partial(order, value, assigned)
        res = extensibility_check(c, self.params,
                                  horizon=self.params.d - 1)
        return res.status == "contradiction"

    def seed_prefix(self, value: int, nbits: int) -> None:
        """Assign prefix bits without counting them, collecting forcings."""
        eng = self.eng
        for bit in range(nbits):
            eng.assign(bit, (value >> bit) & 1)
        if self.forcing:
            keep: list[tuple[int, int]] = []
            for bit in range(nbits):
                self._push_forcings(bit, (value >> bit) & 1, keep)

    def run(self, start_bit: int, value: int) -> None:
        try:
            self._rec(start_bit, value)
        except _Abort:
            self.aborted = True
        except _DoneAtD:
            pass

    def outcome_dict(self, floor_order: int) -> dict:
        return {
            "counts": self.counts,
            "colorings": self.colorings,
            "longest": max(self.longest, floor_order),
            "tests": self.tests,
            "aborted": self.aborted,
        }


def extend_signature(sig: Signature, params: SearchParams, *,
                     until_d: bool = False,
                     threshold: Optional[int] = None,
                     forcing: bool = True,
                     lookahead_every: int = 0,
                     width: int = 64) -> SignatureOutcome:
    """Enumerate every valid coloring growing from the signature.

    The test counter increments at every attempted link coloring; crossing
    the threshold (default: params.abort_threshold) aborts the walk and
    flags the signature as not extensible.  With until_d the walk stops as
    soon as any coloring of order d appears.
    """
    if sig.s != params.s:
        raise ValueError("signature size does not match params.s")
    base = sig.coloring()
    if rebuild_scan(base, params.k, params.j) is not None:
        raise ValueError("signature contains a forbidden clique")
    if threshold is None:
        threshold = params.abort_threshold
    runner = _Runner(params, width=width, forcing=forcing,
                     threshold=threshold, until_d=until_d,
                     lookahead_every=lookahead_every)
    runner.seed_prefix(sig.bits.value, sig.s - 1)
    runner.run(sig.s - 1, sig.bits.value)
    return SignatureOutcome(
        signature=sig,
        reached_d=runner.reached_d and not runner.aborted,
        max_order=max(runner.longest, sig.s),
        tests_used=runner.tests,
        aborted=runner.aborted,
        counts=runner.counts,
        colorings=runner.colorings,
    )


def _have_jit() -> bool:
    try:
        from ._jitenum import HAVE_NUMBA
    except ImportError:
        return False
    return HAVE_NUMBA


def _jit_census(params: SearchParams, keep_cap: int = 2_000_000) -> Census:
    import numpy as np

    from ._jitenum import _census_k3

    counts = np.zeros(65, np.int64)
    keep_orders = np.empty(keep_cap, np.int8)
    keep_vals = np.empty(keep_cap, np.uint64)
    tests, kept, longest = _census_k3(params.j, params.d,
                                      keep_orders, keep_vals, counts)
    if kept >= keep_cap:
        raise RuntimeError("jit retention buffer overflow; raise params.d")
    if longest >= 64:
        raise RuntimeError("jit census hit the 64-bit width limit")
    census = Census(params.k, params.j, params.d, False)
    census.longest = int(longest)
    census.tests = int(tests)
    for order in range(65):
        if counts[order]:
            census.counts[order] = int(counts[order])
    for i in range(kept):
        census.colorings.setdefault(int(keep_orders[i]),
                                    []).append(int(keep_vals[i]))
    return census


def valid_signatures(params: SearchParams, *,
                     reduce_diagonal: bool = False) -> list[Signature]:
    """All valid complete colorings of order s, in increasing mask order."""
    pre = _Runner(params, width=max(8, params.s),
                  reduce_diagonal=reduce_diagonal, forcing=False,
                  retain_from=params.s, stop_bit=params.s - 1)
    pre.run(0, 0)
    values = sorted(pre.colorings.get(params.s, []))
    return [Signature(params.s, BitMask(v, params.s - 1)) for v in values]


def enumerate_colorings(params: SearchParams, *,
                        reduce_diagonal: Optional[bool] = None,
                        forcing: bool = True,
                        budget: Optional[int] = None,
                        journal: Optional[str] = None,
                        resume: bool = False,
                        jobs: int = 1,
                        width: int = 64,
                        engine: str = "auto",
                        progress: Optional[Callable[[int, int], None]] = None
                        ) -> Census:
    """Exhaustive census of valid colorings, every order until extinction.

    Work is split by s-signatures in increasing mask order.  The optional
    journal file records one JSON line per finished signature so an
    interrupted run can resume.  budget caps the total number of link
    coloring attempts; exhausting it yields a census flagged incomplete.

    engine picks the tree walker: "python" is the reference path,
    "jit" the compiled k = 3 kernel, "auto" the kernel whenever the
    request fits it.  Both produce identical censuses up to test
    counts (the kernel applies forcing from the first link, the python
    path only past the signature prefix).
    """
    if engine not in ("auto", "python", "jit"):
        raise ValueError("engine must be auto, python or jit")
    if reduce_diagonal is None:
        reduce_diagonal = params.k == params.j
    if reduce_diagonal and params.k != params.j:
        raise ValueError("color reflection requires k == j")
    jit_fits = (params.k == 3 and forcing and not reduce_diagonal
                and budget is None and journal is None and jobs == 1
                and width <= 64)
    if engine == "jit" and not jit_fits:
        raise ValueError("jit engine handles only plain k == 3 censuses")
    if engine == "jit" or (engine == "auto" and jit_fits and _have_jit()):
        return _jit_census(params)
    census = Census(params.k, params.j, params.d, reduce_diagonal)

    # orders up to s, counted during signature generation
    pre = _Runner(params, width=width, reduce_diagonal=reduce_diagonal,
                  forcing=False, retain_from=params.s,
                  stop_bit=params.s - 1)
    pre.run(0, 0)
    sigs = sorted(pre.colorings.get(params.s, []))
    for order, n in pre.counts.items():
        census.counts[order] = census.counts.get(order, 0) + n
    census.longest = max(census.counts) if census.counts else 0
    census.tests += pre.tests

    done: dict[int, dict] = {}
    if journal and resume:
        try:
            with open(journal) as fh:
                for line in fh:
                    line = line.strip()
                    if line:
                        rec = json.loads(line)
                        done[rec["signature"]] = rec
        except FileNotFoundError:
            pass
    out_fh = open(journal, "a") if journal else None

    remaining = math.inf if budget is None else budget

    def absorb(rec: dict) -> None:
        nonlocal remaining
        for order_s, n in rec["counts"].items():
            order = int(order_s)
            census.counts[order] = census.counts.get(order, 0) + n
        for order_s, vals in rec["colorings"].items():
            order = int(order_s)
            if order >= params.d:
                census.colorings.setdefault(order, []).extend(vals)
        census.longest = max(census.longest, rec["longest"])
        census.tests += rec["tests"]
        if rec["aborted"]:
            census.complete = False
        remaining -= rec["tests"]

    todo = []
    for value in sigs:
        if value in done:
            absorb(done[value])
        else:
            todo.append(value)

    def run_one(value: int) -> dict:
        threshold = None if math.isinf(remaining) else max(1, int(remaining))
        runner = _Runner(params, width=width, forcing=forcing,
                         threshold=threshold)
        runner.seed_prefix(value, params.s - 1)
        runner.run(params.s - 1, value)
        rec = runner.outcome_dict(params.s)
        rec["signature"] = value
        return rec

    if jobs > 1:
        import multiprocessing as mp

        with mp.Pool(jobs, initializer=_init_worker,
                     initargs=(params, width, forcing)) as pool:
            for i, rec in enumerate(
                    pool.imap(_worker_extend, todo, chunksize=16)):
                absorb(rec)
                if out_fh:
                    out_fh.write(json.dumps(rec) + "\n")
                    out_fh.flush()
                if progress:
                    progress(i + 1, len(todo))
    else:
        for i, value in enumerate(todo):
            if remaining <= 0:
                census.complete = False
                break
            rec = run_one(value)
            absorb(rec)
            if out_fh:
                out_fh.write(json.dumps(rec) + "\n")
                out_fh.flush()
            if progress:
                progress(i + 1, len(todo))

    if out_fh:
        out_fh.close()
    return census


_WORKER_STATE: dict = {}


def _init_worker(params: SearchParams, width: int, forcing: bool) -> None:
    _WORKER_STATE["params"] = params
    _WORKER_STATE["width"] = width
    _WORKER_STATE["forcing"] = forcing


def _worker_extend(value: int) -> dict:
    params = _WORKER_STATE["params"]
    runner = _Runner(params, width=_WORKER_STATE["width"],
                     forcing=_WORKER_STATE["forcing"])
    runner.seed_prefix(value, params.s - 1)
    runner.run(params.s - 1, value)
    rec = runner.outcome_dict(params.s)
    rec["signature"] = value
    return rec
