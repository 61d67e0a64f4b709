"""Connected-component exploration of the extensible-signature set.

Signatures whose subtrees reach order d form a set that is usually well
connected under two cheap moves: flipping a single signature bit, and
relabeling a cyclic coloring found near one order-d witness and reading
off its first s - 1 bits.  Starting from a handful of seeds, a queue
closure under these moves recovers most of the set at a fraction of the
cost of full enumeration.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional

from .bitmask import BitMask, mask_to_hex, hex_to_mask
from .cliques import is_valid_coloring
from .coloring import (DistanceColoring, SearchParams, Signature, relabel,
                       relabel_factors)
from .fullenum import extend_signature


def neighbors(sig: Signature) -> list[Signature]:
    """The s - 1 signatures at Hamming distance one."""
    return [Signature(sig.s, BitMask(sig.bits.value ^ (1 << t), sig.s - 1))
            for t in range(sig.s - 1)]


def nearby_cyclic(c: DistanceColoring, k: int, j: int, *,
                  max_mismatch: int = 10,
                  min_order: Optional[int] = None) -> list[DistanceColoring]:
    """Cyclic colorings reachable by repairing a prefix of c.

    For each candidate order between min_order (default: c's own order)
    and c's order, the prefix bits are tested against the palindrome
    constraint b_t = b_{n-1-t}.  When at most max_mismatch bit pairs
    disagree, every repair that settles each disagreeing pair to both
    zero or both one is generated, and those passing the (k, j) clique
    check are returned.
    """
    if not c.is_complete():
        raise ValueError("nearby_cyclic needs a complete coloring")
    if min_order is None:
        min_order = c.order
    if min_order < 3 or min_order > c.order:
        raise ValueError("min_order out of range")
    found = []
    for order in range(min_order, c.order + 1):
        nbits = order - 1
        bits = c.colors.value & ((1 << nbits) - 1)
        pairs = [t for t in range(nbits // 2)
                 if ((bits >> t) ^ (bits >> (nbits - 1 - t))) & 1]
        if len(pairs) > max_mismatch:
            continue
        for choice in range(1 << len(pairs)):
            v = bits
            for i, t in enumerate(pairs):
                both = (1 << t) | (1 << (nbits - 1 - t))
                if (choice >> i) & 1:
                    v |= both
                else:
                    v &= ~both
            cand = DistanceColoring.complete(order, v)
            if is_valid_coloring(cand, k, j):
                found.append(cand)
    return found


@dataclass(frozen=True)
class SignatureRecord:
    """One vetted signature: its verdict, cost, and discovery move."""

    signature: Signature
    status: str          # "extensible" | "not" | "aborted"
    tests: int
    origin: str          # "seed" | "flip" | "relabel"


class SignatureStore:
    """Vetting results of one (k, j, s, d) search, keyed by signature bits.

    A verdict never changes once recorded: add refuses duplicates, so a
    signature reached along several discovery paths keeps whatever the
    first vetting decided.  Aborted signatures count as not extensible
    for search purposes but stay distinguishable in the record.
    """

    def __init__(self, params: SearchParams):
        self.params = params
        self._records: dict[int, SignatureRecord] = {}

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self) -> Iterator[SignatureRecord]:
        return iter(self._records.values())

    def __contains__(self, sig) -> bool:
        key = sig.bits.value if isinstance(sig, Signature) else int(sig)
        return key in self._records

    def add(self, record: SignatureRecord) -> None:
        key = record.signature.bits.value
        if key in self._records:
            raise ValueError("signature already has a recorded status")
        if record.status not in ("extensible", "not", "aborted"):
            raise ValueError("unknown status %r" % (record.status,))
        self._records[key] = record

    def record(self, sig: Signature) -> SignatureRecord:
        return self._records[sig.bits.value]

    def with_status(self, status: str) -> list[Signature]:
        return [r.signature for r in self._records.values()
                if r.status == status]

    def extensible(self) -> list[Signature]:
        return self.with_status("extensible")

    def status_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self._records.values():
            out[r.status] = out.get(r.status, 0) + 1
        return out

    def total_tests(self) -> int:
        return sum(r.tests for r in self._records.values())

    def save(self, path: str) -> None:
        s = self.params.s
        doc = {
            "k": self.params.k, "j": self.params.j,
            "s": s, "d": self.params.d,
            "threshold": self.params.abort_threshold,
            "records": [
                {"bits": mask_to_hex(r.signature.bits.value, s - 1),
                 "status": r.status, "tests": r.tests, "origin": r.origin}
                for r in self._records.values()],
        }
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")

    @classmethod
    def load(cls, path: str) -> "SignatureStore":
        with open(path) as fh:
            doc = json.load(fh)
        params = SearchParams(doc["k"], doc["j"], s=doc["s"], d=doc["d"],
                              abort_threshold=doc["threshold"])
        store = cls(params)
        for item in doc["records"]:
            sig = Signature(params.s,
                            BitMask(hex_to_mask(item["bits"], params.s - 1),
                                    params.s - 1))
            store.add(SignatureRecord(sig, item["status"], item["tests"],
                                      item["origin"]))
        return store


def component_search(seeds: Iterable[Signature], params: SearchParams, *,
                     threshold: Optional[int] = None,
                     max_mismatch: int = 10,
                     min_cyclic_order: Optional[int] = None,
                     progress: Optional[Callable[[int, int], None]] = None
                     ) -> SignatureStore:
    """Queue closure of the extensible component reachable from seeds.

    Each dequeued signature is vetted by walking its subtree until an
    order-d coloring appears or the test counter crosses the threshold
    (default: params.abort_threshold).  Extensible signatures enqueue
    their bit-flip neighbors, and one order-d witness per signature is
    scanned for nearby cyclic colorings whose relabelings donate fresh
    signatures.  Signatures that contain a forbidden clique outright are
    recorded as not extensible without spending any tests.
    """
    if min_cyclic_order is None:
        min_cyclic_order = max(params.s + 1, params.d - 16)
    store = SignatureStore(params)
    queue: deque[tuple[Signature, str]] = deque()
    queued: set[int] = set()

    def push(sig: Signature, origin: str) -> None:
        key = sig.bits.value
        if key in store or key in queued:
            return
        queued.add(key)
        queue.append((sig, origin))

    for sig in seeds:
        push(sig, "seed")
    while queue:
        sig, origin = queue.popleft()
        queued.discard(sig.bits.value)
        try:
            out = extend_signature(sig, params, until_d=True,
                                   threshold=threshold)
        except ValueError:
            store.add(SignatureRecord(sig, "not", 0, origin))
            if progress is not None:
                progress(len(store), len(queue))
            continue
        if out.aborted:
            status = "aborted"
        elif out.reached_d:
            status = "extensible"
        else:
            status = "not"
        store.add(SignatureRecord(sig, status, out.tests_used, origin))
        if progress is not None:
            progress(len(store), len(queue))
        if status != "extensible":
            continue
        for nb in neighbors(sig):
            push(nb, "flip")
        prefix_mask = (1 << (params.s - 1)) - 1
        for value in out.colorings.get(params.d, [])[:1]:
            witness = DistanceColoring.complete(params.d, value)
            for cyc in nearby_cyclic(witness, params.k, params.j,
                                     max_mismatch=max_mismatch,
                                     min_order=min_cyclic_order):
                for m in relabel_factors(cyc.order):
                    bits = relabel(cyc, m).colors.value & prefix_mask
                    push(Signature(params.s, BitMask(bits, params.s - 1)),
                         "relabel")
    return store
