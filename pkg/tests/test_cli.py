import json
import os

import pytest

from bruhat_alcoves.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_interval_json_schema(capsys):
    code, out = run(
        capsys, "interval", "--group", "A2aff", "--x", "121", "--y-theta-s", "2", "2"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "interval.v1"
    assert doc["x"]["word"] == "121"
    assert doc["size"] == len(doc["elements"])
    assert doc["size"] == 63
    assert json.loads(json.dumps(doc)) == doc
    words = [e["word"] for e in doc["elements"]]
    assert words == sorted(words, key=lambda w: (len(w), w))


def test_interval_csv(capsys):
    code, out = run(
        capsys, "interval", "--x", "121", "--y-theta", "1", "1", "--format", "csv"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "word,length,cen_u,cen_v,zone"
    assert len(lines) > 2


def test_interval_requires_one_spec(capsys):
    code = main(["interval", "--x", "121", "--x-wall", "3", "--y", "12"])
    assert code == 2


def test_ball_and_cache(tmp_path, capsys):
    cache = os.path.join(tmp_path, "ball.bin")
    code, out = run(capsys, "ball", "--group", "A2aff", "--max-len", "5", "--cache", cache)
    assert code == 0
    assert os.path.exists(cache)
    doc = json.loads(out)
    assert doc["size"] == 1 + 3 + 6 + 9 + 12 + 15
    code, out = run(capsys, "ball", "--group", "A2aff", "--max-len", "5", "--cache", cache)
    assert code == 0 and json.loads(out)["size"] == doc["size"]


def test_kl_table_csv(capsys):
    code, out = run(capsys, "kl", "--max-len", "8", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "x,y,coeffs,provenance"
    assert any("closed-theta" in line for line in lines[1:])


def test_classify_exit_codes(capsys):
    code, out = run(capsys, "classify", "--mode", "lower", "--max-len", "6")
    assert code == 0
    doc = json.loads(out)
    assert doc["counterexamples"] == []


def test_verify_table1(capsys):
    code, out = run(capsys, "verify-table1", "--type", "B2", "--len-xy", "5", "--len-x", "8")
    assert code == 0
    assert json.loads(out)["counterexamples"] == []


def test_stabilize(capsys):
    code, out = run(
        capsys, "stabilize", "--x-theta", "0", "0", "--y-theta", "4", "4", "--lam", "1", "0"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["n0"] is not None


def test_draw_deterministic(tmp_path, capsys):
    out1 = os.path.join(tmp_path, "a.svg")
    out2 = os.path.join(tmp_path, "b.svg")
    assert main(["draw", "--star", "121", "--out", out1]) == 0
    assert main(["draw", "--star", "121", "--out", out2]) == 0
    b1, b2 = open(out1, "rb").read(), open(out2, "rb").read()
    assert b1 == b2
    assert b1.startswith(b"<svg")


def test_draw_c_polygon_hexagon(capsys):
    code, out = run(capsys, "draw", "--c-polygon", "121")
    assert code == 0
    assert out.count("<g ") >= 3


def test_draw_interval_counts_cells(capsys):
    code, out = run(capsys, "draw", "--interval", "121", "12121")
    assert code == 0
    from bruhat_alcoves import a2

    x = a2.A2Elt.from_word((1, 2, 1))
    y = a2.A2Elt.from_word((1, 2, 1, 2, 1))
    n = len(a2.interval_geom(x, y))
    # one filled path per interval element in the cells group
    cells = out.split('<g style="fill:#7aa0d0')[1].split("</g>")[0]
    assert cells.count("<path") == n
