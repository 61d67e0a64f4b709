import json

from ramseykit.cli import main
from ramseykit.coloring import from_certificate
from ramseykit.formats import read_census, read_records


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_enumerate_census(tmp_path, capsys):
    out = str(tmp_path / "census.txt")
    code, text = run(capsys, "enumerate", "--k", "3", "--j", "3",
                     "--s", "3", "--d", "5", "--out", out)
    assert code == 0
    assert "longest 5" in text
    census = read_census(out)
    assert census.longest == 5
    # diagonal runs reduce by color reflection, one per complement pair
    assert census.colorings[5] == [0b0110]


def test_enumerate_engine_choice(capsys):
    code, text = run(capsys, "enumerate", "--k", "3", "--j", "4",
                     "--s", "3", "--d", "6", "--engine", "python")
    assert code == 0
    assert "longest 8" in text


def test_connect_round_trip(tmp_path, capsys):
    seeds = tmp_path / "seeds.txt"
    seeds.write_text("distance 6 : 11\n")
    out = str(tmp_path / "store.json")
    code, text = run(capsys, "connect", "--k", "4", "--j", "4",
                     "--s", "6", "--d", "10", "--seeds", str(seeds),
                     "--out", out)
    assert code == 0
    assert "extensible 14" in text
    doc = json.loads(open(out).read())
    assert doc["s"] == 6 and doc["d"] == 10
    assert len(doc["records"]) >= 14


def test_connect_rejects_order_mismatch(tmp_path, capsys):
    seeds = tmp_path / "seeds.txt"
    seeds.write_text("distance 5 : 6\n")
    code, _ = run(capsys, "connect", "--k", "4", "--j", "4",
                  "--s", "6", "--d", "10", "--seeds", str(seeds),
                  "--out", str(tmp_path / "x.json"))
    assert code == 2


def test_cyclic_search(tmp_path, capsys):
    seeds = tmp_path / "seeds.txt"
    seeds.write_text("distance 5 : 6\n")
    out = str(tmp_path / "found.txt")
    code, text = run(capsys, "cyclic", "--k", "3", "--j", "3",
                     "--seeds", str(seeds), "--out", out)
    assert code == 0
    assert "5 2" in text
    masks = {r.colors.value for r in read_records(out)}
    assert masks == {0b0110, 0b1001}


def test_construct_and_verify_pipeline(tmp_path, capsys):
    certs = str(tmp_path / "paley.txt")
    code, text = run(capsys, "construct", "paley", "--n", "17",
                     "--claim", "4", "4", "--out", certs)
    assert code == 0
    assert "order 17" in text

    code, text = run(capsys, "verify", certs)
    assert code == 0
    assert text.startswith("PASS")

    code, text = run(capsys, "verify", certs, "--json")
    assert code == 0
    doc = json.loads(text)
    (v,) = doc["verdicts"]
    assert v["passes"] is True
    assert v["order"] == 17
    assert (v["k"], v["j"]) == (4, 4)
    assert v["label"] == "paley-17-0"


def test_verify_failure_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("circulant 6 : 1 # 3 3\n")
    code, text = run(capsys, "verify", str(bad))
    assert code == 1
    assert text.startswith("FAIL")


def test_verify_needs_claim(tmp_path, capsys):
    plain = tmp_path / "plain.txt"
    plain.write_text("distance 5 : 6\n")
    code, _ = run(capsys, "verify", str(plain))
    assert code == 2
    code, text = run(capsys, "verify", str(plain), "--k", "3", "--j", "3")
    assert code == 0


def test_construct_degenerate_block_quadruple(tmp_path, capsys):
    deg = str(tmp_path / "deg.txt")
    code, text = run(capsys, "construct", "degenerate", "--n", "26",
                     "--out", deg)
    assert code == 0
    assert len(read_records(deg)) == 16

    blk = str(tmp_path / "blk.txt")
    code, _ = run(capsys, "construct", "block", "--input", deg,
                  "--diag", "0", "--out", blk)
    assert code == 0
    assert all(r.order == 52 for r in read_records(blk))

    pent = tmp_path / "pent.txt"
    pent.write_text("circulant 5 : 2\n")
    quad = str(tmp_path / "quad.txt")
    code, _ = run(capsys, "construct", "quadruple", "--input", str(pent),
                  "--k", "5", "--j", "4", "--budget", "64", "--out", quad)
    assert code == 0
    for rec in read_records(quad):
        assert rec.order == 20
        assert from_certificate(rec).is_cyclic()


def test_construct_usage_errors(tmp_path, capsys):
    code, _ = run(capsys, "construct", "paley",
                  "--out", str(tmp_path / "x.txt"))
    assert code == 2
    code, _ = run(capsys, "construct", "quadruple", "--input", "nope.txt",
                  "--k", "5", "--j", "4", "--out", str(tmp_path / "x.txt"))
    assert code == 2
    code, _ = run(capsys, "construct", "degenerate", "--n", "15",
                  "--out", str(tmp_path / "x.txt"))
    assert code == 2


def test_stats_output(tmp_path, capsys):
    store = tmp_path / "store.txt"
    store.write_text("distance 5 : 6\ndistance 5 : 9\ncirculant 13 : 1 5\n")
    code, text = run(capsys, "stats", str(store))
    assert code == 0
    assert "5 raw 2 canonical 1" in text
    assert "13 raw 1 canonical 1" in text


def test_malformed_file_is_a_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("circulant five : 1\n")
    code, _ = run(capsys, "verify", str(bad))
    assert code == 2
