import pytest

from ramseykit.bitmask import BitMask
from ramseykit.cliques import is_valid_coloring
from ramseykit.coloring import (Certificate, DistanceColoring, SearchParams,
                                Signature, from_certificate)
from ramseykit.fullenum import extend_signature, valid_signatures
from ramseykit.sigsearch import (SignatureRecord, SignatureStore,
                                 component_search, nearby_cyclic, neighbors)


def sig(s, bits):
    return Signature(s, BitMask(bits, s - 1))


def test_neighbors_are_single_flips():
    out = neighbors(sig(4, 0b101))
    assert {n.bits.value for n in out} == {0b100, 0b111, 0b001}
    assert all(n.s == 4 for n in out)
    assert len(neighbors(sig(2, 0b0))) == 1


def test_neighbors_is_an_involution():
    base = sig(5, 0b0110)
    for n in neighbors(base):
        assert base.bits.value in {m.bits.value for m in neighbors(n)}


def cyclic_35_coloring():
    # triangle-free color 0 of order 13, the K5-free complement in color 1
    return from_certificate(Certificate(13, (1, 5))).complement()


def test_nearby_cyclic_finds_itself():
    c = cyclic_35_coloring()
    out = nearby_cyclic(c, 3, 5)
    assert [x.colors.value for x in out] == [c.colors.value]


def test_nearby_cyclic_repairs_flipped_pairs():
    c = cyclic_35_coloring()
    # damage one side of three palindrome pairs
    damaged = DistanceColoring.complete(13, c.colors.value ^ 0b10110)
    out = nearby_cyclic(damaged, 3, 5, max_mismatch=3)
    assert c.colors.value in {x.colors.value for x in out}
    assert nearby_cyclic(damaged, 3, 5, max_mismatch=2) == []


def test_nearby_cyclic_scans_shorter_orders():
    c13 = cyclic_35_coloring()
    # extend by one arbitrary bit; the order-14 prefix cannot be valid
    c14 = DistanceColoring.complete(14, c13.colors.value | (1 << 12))
    out = nearby_cyclic(c14, 3, 5, min_order=13)
    assert {x.order for x in out} == {13}
    assert c13.colors.value in {x.colors.value for x in out}


def test_nearby_cyclic_argument_checks():
    c = cyclic_35_coloring()
    with pytest.raises(ValueError):
        nearby_cyclic(DistanceColoring.partial(5, 0, 0b1), 3, 3)
    with pytest.raises(ValueError):
        nearby_cyclic(c, 3, 5, min_order=2)
    with pytest.raises(ValueError):
        nearby_cyclic(c, 3, 5, min_order=14)


def test_store_add_and_immutability():
    params = SearchParams(3, 3, s=4, d=5)
    store = SignatureStore(params)
    rec = SignatureRecord(sig(4, 0b110), "extensible", 7, "seed")
    store.add(rec)
    assert len(store) == 1
    assert sig(4, 0b110) in store
    assert store.record(sig(4, 0b110)) is rec
    with pytest.raises(ValueError):
        store.add(SignatureRecord(sig(4, 0b110), "not", 0, "flip"))
    with pytest.raises(ValueError):
        store.add(SignatureRecord(sig(4, 0b001), "maybe", 0, "flip"))


def test_store_views_and_counts():
    params = SearchParams(3, 3, s=4, d=5)
    store = SignatureStore(params)
    store.add(SignatureRecord(sig(4, 0b110), "extensible", 7, "seed"))
    store.add(SignatureRecord(sig(4, 0b111), "not", 0, "flip"))
    store.add(SignatureRecord(sig(4, 0b010), "aborted", 5, "flip"))
    assert {s.bits.value for s in store.extensible()} == {0b110}
    assert {s.bits.value for s in store.with_status("aborted")} == {0b010}
    assert store.status_counts() == {"extensible": 1, "not": 1, "aborted": 1}
    assert store.total_tests() == 12


def test_store_save_load_round_trip(tmp_path):
    params = SearchParams(4, 4, s=6, d=10, abort_threshold=1234)
    store = SignatureStore(params)
    store.add(SignatureRecord(sig(6, 0b10110), "extensible", 42, "seed"))
    store.add(SignatureRecord(sig(6, 0b00001), "aborted", 9, "relabel"))
    path = str(tmp_path / "store.json")
    store.save(path)

    again = SignatureStore.load(path)
    assert again.params == params
    assert len(again) == 2
    r = again.record(sig(6, 0b10110))
    assert (r.status, r.tests, r.origin) == ("extensible", 42, "seed")


def test_component_matches_full_enumeration():
    params = SearchParams(4, 4, s=6, d=10, abort_threshold=100000)
    oracle = set()
    for s in valid_signatures(params):
        if extend_signature(s, params, until_d=True).reached_d:
            oracle.add(s.bits.value)
    assert len(oracle) == 14

    seed = sig(6, min(oracle))
    store = component_search([seed], params)
    assert {s.bits.value for s in store.extensible()} == oracle


def test_component_rejects_forbidden_seed_quietly():
    params = SearchParams(3, 3, s=4, d=5)
    store = component_search([sig(4, 0b111)], params)
    rec = store.record(sig(4, 0b111))
    assert rec.status == "not"
    assert rec.tests == 0


def test_component_progress_and_origins():
    params = SearchParams(4, 4, s=6, d=10, abort_threshold=100000)
    calls = []
    store = component_search([sig(6, 0b00011)], params,
                             progress=lambda done, left: calls.append(done))
    assert calls and calls[-1] == len(store)
    origins = {r.origin for r in store}
    assert "seed" in origins and "flip" in origins


def test_low_threshold_statuses_are_conservative():
    params = SearchParams(4, 4, s=6, d=10, abort_threshold=100000)
    full = component_search([sig(6, 0b00011)], params)
    starved = component_search([sig(6, 0b00011)], params, threshold=40)
    full_ext = {s.bits.value for s in full.extensible()}
    for rec in starved:
        key = rec.signature.bits.value
        if rec.status == "extensible":
            assert key in full_ext
        # aborted verdicts may hide either true status
        if rec.status == "aborted":
            assert rec.tests >= 40


def test_extensible_signatures_reach_d_without_contradiction():
    params = SearchParams(4, 4, s=6, d=10, abort_threshold=100000)
    store = component_search([sig(6, 0b00011)], params)
    for s in store.extensible():
        out = extend_signature(s, params, until_d=True)
        assert out.reached_d
        for value in out.colorings.get(params.d, [])[:3]:
            c = DistanceColoring.complete(params.d, value)
            assert is_valid_coloring(c, params.k, params.j)
