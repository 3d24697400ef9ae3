import json

import pytest

from ddlab.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    return code, capsys.readouterr()


def test_version(capsys):
    code, res = invoke(capsys, "--version")
    assert code == 0
    assert json.loads(res.out) == {"tool": "ddlab", "version": "0.1.0"}


def test_construct_then_count(capsys, tmp_path):
    code, res = invoke(capsys, "construct", "--kind", "perpendicular", "--m", "16", "--n", "16")
    assert code == 0
    doc = json.loads(res.out)
    assert doc["meta"]["subcommand"] == "construct" and doc["meta"]["seed"] == 0
    assert len(doc["p1"]) == 16 and len(doc["p2"]) == 16
    path = tmp_path / "cons.json"
    path.write_text(res.out)

    code, res = invoke(capsys, "count", str(path))
    assert code == 0
    counted = json.loads(res.out)
    assert counted["distinct"] == 31 and counted["total_pairs"] == 256

    code, res = invoke(capsys, "count", str(path), "--mode", "float")
    assert code == 0 and json.loads(res.out)["distinct"] == 31


def test_aligned_count_by_class(capsys, tmp_path):
    code, res = invoke(capsys, "construct", "--kind", "aligned", "--m", "16", "--n", "16", "--lattice", "16")
    assert code == 0
    path = tmp_path / "aligned.json"
    path.write_text(res.out)
    code, res = invoke(capsys, "count", str(path))
    doc = json.loads(res.out)
    assert code == 0 and doc["key_kind"] == "angular_class" and doc["distinct"] == 9


def test_count_point_files(capsys, tmp_path):
    (tmp_path / "a.json").write_text("[[0,0,0]]")
    (tmp_path / "b.json").write_text('{"points": [[1,0,0],[0,1,0]]}')
    code, res = invoke(capsys, "count", "--a", str(tmp_path / "a.json"), "--b", str(tmp_path / "b.json"))
    doc = json.loads(res.out)
    assert code == 0 and doc["distinct"] == 1 and doc["quadruples"] == 4


def test_histogram_within_one_set(capsys, tmp_path):
    path = tmp_path / "square.json"
    path.write_text("[[0,0,0],[1,0,0],[0,1,0],[1,1,0]]")
    code, res = invoke(capsys, "histogram", str(path))
    doc = json.loads(res.out)
    assert code == 0 and doc["distinct"] == 2
    assert dict((k, v) for k, v in doc["histogram"]) == {"1": 4, "2": 2}


def test_classify(capsys, tmp_path):
    code, res = invoke(capsys, "construct", "--kind", "perpendicular", "--m", "2", "--n", "2")
    circles = json.loads(res.out)["circles"]
    path = tmp_path / "circles.json"
    path.write_text(json.dumps({"c1": circles[0], "c2": circles[1]}))
    code, res = invoke(capsys, "classify", str(path))
    assert code == 0 and json.loads(res.out)["kind"] == "perpendicular"


def test_derivtest_xz(capsys):
    code, res = invoke(capsys, "derivtest", "--case", "xz", "--targets", "2,0;0,0")
    doc = json.loads(res.out)
    assert code == 0 and doc["is_zero"] is False
    coeffs = {(c["s_deg"], c["t_deg"]): c["poly"] for c in doc["coefficients"]}
    assert coeffs == {(2, 0): "1*q", (0, 0): "-1*q"}


def test_derivtest_perpendicular_is_zero(capsys):
    code, res = invoke(capsys, "derivtest", "--case", "xz", "--q", "0")
    assert code == 0 and json.loads(res.out)["is_zero"] is True


def test_out_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, res = invoke(capsys, "construct", "--kind", "perpendicular", "--m", "2", "--n", "2", "--out", str(target))
    assert code == 0 and res.out == ""
    assert json.loads(target.read_text())["kind"] == "perpendicular"


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "/nonexistent/circles.json"],
        ["derivtest", "--case", "bogus"],
        ["construct", "--kind", "perpendicular", "--m", "0", "--n", "2"],
        ["derivtest", "--case", "xz", "--r", "-1"],
        ["count"],
        [],
    ],
)
def test_input_errors_exit_one(capsys, argv):
    code, res = invoke(capsys, *argv)
    assert code == 1 and res.err


def test_verify_appendix_disabled_relation_exits_two(capsys):
    code, res = invoke(capsys, "verify-appendix", "--trials", "5", "--disable-relation", "w")
    doc = json.loads(res.out)
    assert code == 2 and not doc["all_passed"]
    assert "generic:s5t1" in doc["failed"]
