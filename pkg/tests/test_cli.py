import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

from atfgerm.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(list(argv))
    return code, out.getvalue(), err.getvalue()


def ok_json(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)


@pytest.fixture
def germ_files(tmp_path):
    paths = {}
    for name, argv in {
        "u2": ("germ", "upsilon", "-k", "2", "--a1", "3", "--a2", "1"),
        "u3": ("germ", "upsilon", "-k", "3", "--a1", "4", "--a2", "1"),
        "t112": ("germ", "theta", "--triple", "1,1,2", "--area", "3"),
    }.items():
        code, out, _ = call(*argv)
        assert code == 0
        p = tmp_path / f"{name}.json"
        p.write_text(out)
        paths[name] = str(p)
    return paths


def test_markov_tree():
    d = ok_json("markov", "tree", "--max-entry", "30")
    triples = {tuple(n["triple"]) for n in d["nodes"]}
    assert triples == {(1, 1, 1), (1, 1, 2), (1, 2, 5), (1, 5, 13), (2, 5, 29)}


def test_germ_compare_upsilon(germ_files):
    d = ok_json("germ", "compare", "--left", germ_files["u2"], "--right", germ_files["u3"])
    assert d == {"result": "inequivalent", "invariant": "pairwise_index", "left": [1, 1, 2], "right": [1, 1, 3]}


def test_germ_compare_discrepancy(germ_files):
    d = ok_json("germ", "compare", "--left", germ_files["u2"], "--right", germ_files["t112"])
    assert d["result"] == "inequivalent"
    assert d["invariant"] == "triple_index"
    assert (d["left"], d["right"]) == ([2], [6])
    assert "paper-remark-1.7-discrepancy" in d["flags"]


def test_germ_invariants(germ_files):
    d = ok_json("germ", "invariants", "--in", germ_files["t112"])
    assert d["pairwise_index"] == [1, 1, 2]
    assert d["triple_index"] == [6]


def test_check_cs():
    d = ok_json("check", "cs", "--torus", "1,2,3", "--radius", "8", "--lambda-s", "inf")
    assert d == {"cs": True, "slack_capacity": "1", "slack_sphere": "inf"}


def test_check_epsilon_and_theorem_d():
    assert ok_json("check", "epsilon", "--family", "theta", "--radius", "8", "--lambda-s", "5")["epsilon"] == "5"
    assert ok_json("check", "epsilon", "--family", "upsilon", "--radius", "8", "--lambda-s", "inf")["epsilon"] == "4"


def test_germ_product_and_toric(tmp_path):
    assert ok_json("germ", "product", "--a", "2,1,1") == {
        "constant": "1", "vectors": [[0, 0, 1], [0, 1, 0]], "source": {"family": "product", "areas": ["2", "1", "1"]}
    }
    code, out, _ = call("diagram", "delta-m", "--triple", "1,1,1")
    f = tmp_path / "cp2.json"
    f.write_text(out)
    d = ok_json("germ", "toric", "--polytope", str(f), "--point", "0,0")
    assert d["constant"] == "1/3"
    assert sorted(d["vectors"]) == [[-1, -1], [0, 1], [1, 0]]


def test_diagram_round_trip_mutate_and_render(tmp_path):
    code, out, _ = call("diagram", "delta-m", "--triple", "1,1,1")
    assert code == 0
    src = tmp_path / "cp2.json"
    src.write_text(out)
    dst = tmp_path / "m.json"
    d = ok_json("diagram", "mutate", "--in", str(src), "--node", "0", "--out", str(dst))
    assert d["facets"] == 3
    again = tmp_path / "m2.json"
    assert call("diagram", "mutate", "--in", str(dst), "--node", "1", "--out", str(again))[0] == 0

    svg = tmp_path / "cp2.svg"
    ok_json("diagram", "render", "--in", str(src), "--out", str(svg))
    text = svg.read_text()
    assert text.count('class="outline"') == 1
    assert text.count('class="node"') == 3
    assert text.count('class="cut"') == 3
    assert 'stroke-dasharray' in text
    ok_json("diagram", "render", "--in", str(src), "--out", str(svg), "--chambers")
    assert svg.read_text().count('class="chamber"') == 3


def test_render_without_nodes(tmp_path):
    src = tmp_path / "bare.json"
    src.write_text(json.dumps({"polytope": {"dim": 2, "facets": [
        {"normal": [1, 0], "offset": "1/3"}, {"normal": [0, 1], "offset": "1/3"}, {"normal": [-1, -1], "offset": "1/3"}]},
        "nodes": []}))
    svg = tmp_path / "bare.svg"
    ok_json("diagram", "render", "--in", str(src), "--out", str(svg))
    text = svg.read_text()
    assert text.count("<polygon") == 1
    assert 'class="node"' not in text and 'class="cut"' not in text


def test_verify_dia_invariance():
    d = ok_json("verify", "dia-invariance", "--triple", "1,2,5", "--samples", "50", "--seed", "3")
    assert d["ok"]


def test_delta_m_labels():
    d = ok_json("diagram", "delta-m", "--triple", "1,2,5")
    assert sorted(d["corner_labels"]) == [1, 2, 5]
    assert {f["offset"] for f in d["polytope"]["facets"]} == {"1/3"}


def test_exit_codes(tmp_path):
    assert call("germ", "upsilon", "-k", "2", "--a1", "1/x", "--a2", "1")[0] == 2
    assert call("nonsense")[0] == 2
    code, _, err = call("germ", "upsilon", "-k", "2", "--a1", "2", "--a2", "1")
    assert code == 1
    assert json.loads(err)["error"] == "InvalidParams"
    assert call("diagram", "delta-m", "--triple", "2,2,2")[0] == 1
    assert call("germ", "compare", "--left", str(tmp_path / "missing.json"), "--right", "x")[0] == 1


def test_output_is_deterministic(tmp_path):
    a = call("markov", "tree", "--max-entry", "1000")[1]
    b = call("markov", "tree", "--max-entry", "1000")[1]
    assert a == b
