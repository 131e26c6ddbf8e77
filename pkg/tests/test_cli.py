import json

import pytest

from hallq import cli
from hallq.gallery import example_quiver


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    ex1 = tmp_path / "ex1.quiver"
    ex1.write_text(example_quiver(1).to_text())
    a2 = tmp_path / "a2.json"
    a2.write_text(json.dumps({"vertices": ["1", "2"], "arrows": [["a", "1", "2"]]}))
    one = tmp_path / "one.quiver"
    one.write_text("vertex x\n")
    cyc = tmp_path / "cycle.quiver"
    cyc.write_text("vertex 1\nvertex 2\narrow a 1 2\narrow b 2 1\n")
    deep = tmp_path / "deep.quiver"
    deep.write_text("vertex 1\nvertex 2\nvertex 3\nvertex 4\n"
                    "arrow a 1 2\narrow b 2 3\narrow c 3 4\nrelation a,b\nrelation b,c\n")
    return {"ex1": ex1, "a2": a2, "one": one, "cycle": cyc, "deep": deep}


def test_analyze(capsys, files, tmp_path):
    code, out, _ = run(capsys, "analyze", files["ex1"], "--format", "json", "--cache-dir", tmp_path)
    assert code == 0
    data = json.loads(out)
    assert data["results"]["gldim"] == 2 and data["passed"]
    assert len(data["results"]["roots"]) == 5


def test_text_output(capsys, files, tmp_path):
    code, out, _ = run(capsys, "analyze", files["ex1"], "--cache-dir", tmp_path)
    assert code == 0 and "[PASS]" in out and "gldim: 2" in out


def test_input_errors(capsys, files):
    code, _, err = run(capsys, "analyze", files["cycle"])
    assert code == 2 and "OrientedCycle" in err
    code, _, err = run(capsys, "analyze", files["deep"])
    assert code == 2 and "GlobalDimensionTooLarge" in err
    code, _, err = run(capsys, "roots", files["ex1"].parent / "missing.quiver")
    assert code == 2


def test_roots_and_indecomposables(capsys, files, tmp_path):
    code, out, _ = run(capsys, "roots", files["a2"], "--format", "json")
    assert code == 0
    rows = json.loads(out)["results"]["roots"]
    assert sorted(tuple(r["vector"]) for r in rows) == [(0, 1), (1, 0), (1, 1)]
    assert all(r["T_value"] == 1 for r in rows)
    code, out, _ = run(capsys, "indecomposables", files["ex1"], "--format", "json", "--cache-dir", tmp_path)
    data = json.loads(out)
    assert code == 0 and data["checks"]["root_bijection"] and data["checks"]["directed_order"]


def test_hall_table_single_vertex(capsys, files):
    code, out, _ = run(capsys, "hall-table", files["one"], "--degree-bound", 2, "--format", "json")
    assert code == 0
    rows = json.loads(out)["results"]["products"]
    assert len(rows) == 1
    assert rows[0]["F"] == 1 + 3 and rows[0]["twist_exponent"] == 1


def test_presentation_and_verify(capsys, files):
    code, out, _ = run(capsys, "presentation", files["a2"], "--format", "json")
    assert code == 0
    res = json.loads(out)["results"]
    assert res["relation_count"] >= 2
    code, out, _ = run(capsys, "verify-rho", files["a2"], "--format", "json", "--max-degree", 4)
    data = json.loads(out)
    assert code == 0 and data["results"]["isomorphism_verified"]
    code, out, _ = run(capsys, "verify-rho", files["a2"], "--q", 2, "--format", "json", "--max-degree", 4)
    data = json.loads(out)
    assert code == 0 and data["results"]["isomorphism_verified"] is None


def test_bad_prime(capsys, files):
    with pytest.raises(SystemExit):
        cli.main(["roots", str(files["a2"]), "--q", "4"])
    capsys.readouterr()


def test_report_roundtrip():
    rep = cli.Report("roots", {"roots": [[1, 0]]}, {"ok": True}, elapsed=1.5)
    back = cli.Report.from_json(rep.to_json())
    assert back.to_dict() == rep.to_dict()
    assert back.passed


def test_cache_reruns_identical(capsys, files, tmp_path):
    args = ("indecomposables", files["ex1"], "--format", "json", "--cache-dir", tmp_path / "c")
    _, first, _ = run(capsys, *args)
    assert list((tmp_path / "c").iterdir())
    _, second, _ = run(capsys, *args)
    assert first == second


@pytest.mark.parametrize("n", [1, 2])
def test_examples_pass(capsys, tmp_path, n):
    code, out, _ = run(capsys, "examples", n, "--format", "json", "--cache-dir", tmp_path, "--max-degree", 4)
    data = json.loads(out)
    assert code == 0 and data["checks"]["golden_relations"]


def test_example_two_with_three_vertices(capsys, tmp_path):
    code, out, _ = run(capsys, "examples", 2, "--length", 3, "--format", "json", "--max-degree", 4)
    data = json.loads(out)
    assert code == 0
    assert data["results"]["quiver"]["vertices"] == ["1", "2", "3"]


@pytest.mark.parametrize("n", [3, 4])
def test_rhombus_examples_report_failure(capsys, tmp_path, n):
    code, out, _ = run(capsys, "examples", n, "--format", "json", "--cache-dir", tmp_path, "--max-degree", 4)
    data = json.loads(out)
    checks = data["checks"]
    assert checks["golden_relations"] and checks["published_relations_vanish"]
    assert checks["published_dims_match_hall"]
    assert not checks["verify-rho:homomorphism"]
    assert code == 1
