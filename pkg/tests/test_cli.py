from __future__ import annotations

import json
import subprocess
import sys

import pytest

from lrcavail.bounds import BoundParams, find_crossing
from lrcavail.cli import main
from lrcavail.constructions import complete_graph_code, platonic, polyhedron_code
from lrcavail.gf2 import code_from_json, code_to_json, codes_equal


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_code(tmp_path, c, name="code.json"):
    p = tmp_path / name
    p.write_text(json.dumps(code_to_json(c)))
    return str(p)


# -- construct ---------------------------------------------------------------


@pytest.mark.parametrize("argv, nk", [
    (("platonic", "tetrahedron"), (6, 3)),
    (("simplex", "3"), (7, 3)),
    (("complete", "4"), (6, 3)),
    (("hamming", "3"), (7, 4)),
    (("fano",), (7, 3)),
])
def test_construct(capsys, argv, nk):
    code, out, err = run(capsys, "construct", *argv)
    assert code == 0 and err == ""
    data = json.loads(out)
    assert (data["n"], data["k"]) == nk


def test_construct_complete_is_k4_cycle_space(capsys):
    _, out, _ = run(capsys, "construct", "complete", "4")
    assert codes_equal(code_from_json(out), complete_graph_code(4))


def test_construct_with_enumerator(capsys):
    _, out, _ = run(capsys, "construct", "platonic", "tetrahedron", "--with-enumerator")
    assert json.loads(out)["weight_enumerator"]["polynomial"] == "1 + 4z^3 + 3z^4"


def test_construct_graph_from_file(capsys, tmp_path):
    p = tmp_path / "k4.txt"
    p.write_text("1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n")
    code, out, _ = run(capsys, "construct", "graph", str(p))
    assert code == 0 and codes_equal(code_from_json(out), complete_graph_code(4))


@pytest.mark.parametrize("argv", [
    ("construct", "platonic", "prism"),
    ("construct", "simplex", "x"),
    ("construct", "simplex"),
    ("construct", "fano", "3"),
    ("construct", "graph", "/nonexistent/file"),
])
def test_construct_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["construct", "cylinder"])
    assert exc.value.code == 2


# -- analyze -----------------------------------------------------------------


def test_analyze_octahedron(capsys, tmp_path):
    path = write_code(tmp_path, polyhedron_code(platonic("octahedron"))[0])
    code, out, _ = run(capsys, "analyze", path, "--r", "3", "--t", "2")
    assert code == 0 and json.loads(out)["available"] is True
    code, out, err = run(capsys, "analyze", path, "--r", "2", "--t", "2")
    assert code == 1 and json.loads(out)["available"] is False and err


def test_analyze_profile(capsys):
    _, out, _ = run(capsys, "construct", "simplex", "3")
    import io
    sys_stdin = sys.stdin
    sys.stdin = io.StringIO(out)
    try:
        code, out, _ = run(capsys, "analyze", "-", "--profile", "--r", "2")
    finally:
        sys.stdin = sys_stdin
    assert code == 0 and json.loads(out)["profile"] == [3] * 7


def test_construct_output_round_trips_through_analyze(capsys, tmp_path):
    for argv in (("platonic", "cube"), ("complete", "5"), ("hamming", "3")):
        _, out, _ = run(capsys, "construct", *argv)
        p = tmp_path / "c.json"
        p.write_text(out)
        code, analyzed, _ = run(capsys, "analyze", str(p), "--r", "1", "--profile")
        data = json.loads(analyzed)
        again = code_from_json(out)
        assert code == 0 and (data["n"], data["k"]) == (again.n, again.k)
        assert code_to_json(again) == json.loads(out)


@pytest.mark.parametrize("content", ["{not json", '{"n": 3}'])
def test_analyze_parse_errors(capsys, tmp_path, content):
    p = tmp_path / "bad.json"
    p.write_text(content)
    code, out, _ = run(capsys, "analyze", str(p), "--r", "2", "--t", "1")
    assert code == 2 and out == ""


def test_analyze_needs_t_or_profile(capsys, tmp_path):
    path = write_code(tmp_path, complete_graph_code(4))
    assert run(capsys, "analyze", path, "--r", "2")[0] == 2
    assert run(capsys, "analyze", path, "--r", "2", "--t", "2", "--jobs", "0")[0] == 2


# -- bounds ------------------------------------------------------------------


def test_bounds_crossing_entropy_tbf1(capsys):
    code, out, _ = run(capsys, "bounds", "--crossing", "thm3_entropy", "tbf1", "--sweep", "t", "--fix", "r=2", "--range", "2:100")
    assert code == 0 and out.strip() == "74"


def test_bounds_crossing_agrees_with_library(capsys):
    _, out, _ = run(capsys, "bounds", "--crossing", "cor3", "bk1", "--sweep", "r", "--fix", "t=3", "--range", "3:90")
    assert int(out) == find_crossing("cor3", "bk1", "r", range(3, 91), BoundParams(t=3))


def test_bounds_single_row(capsys):
    code, out, _ = run(capsys, "bounds", "--names", "thm1", "--sweep", "r", "--range", "2:2")
    assert code == 0 and out == "param,thm1\n2,0.5\n"


def test_bounds_json(capsys):
    _, out, _ = run(capsys, "bounds", "--names", "thm1", "tbf1", "--sweep", "r", "--fix", "t=3", "--range", "2:3", "--format", "json")
    data = json.loads(out)
    assert data["rows"][0]["values"]["tbf1"] == "16/35"


@pytest.mark.parametrize("argv", [
    ("bounds", "--sweep", "r", "--range", "5:2"),
    ("bounds", "--sweep", "r", "--range", "2-5"),
    ("bounds", "--sweep", "r", "--range", "2:5", "--fix", "k=3"),
    ("bounds", "--names", "tbf1", "--sweep", "r", "--range", "2:5"),
    ("bounds", "--names", "thm1"),
])
def test_bounds_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


# -- table1 ------------------------------------------------------------------


def test_table1(capsys):
    code, out, _ = run(capsys, "table1")
    assert code == 0
    rows = {r["solid"]: r for r in json.loads(out)}
    t = rows["tetrahedron"]
    assert (t["n"], t["k"]) == (6, 3)
    assert (t["availability"]["r"], t["availability"]["t"]) == (2, 2)
    assert t["weight_enumerator"] == "1 + 4z^3 + 3z^4"
    d, i = rows["dodecahedron"], rows["icosahedron"]
    assert (d["n"], d["k"], d["availability"]["r"]) == (30, 11, 2)
    assert (i["n"], i["k"], i["availability"]["r"]) == (30, 19, 4)
    assert d["weight_enumerator"].startswith("1 + 12z^5")
    assert i["weight_enumerator"].startswith("1 + 20z^3")
    assert d["matches_reference_row"] == "icosahedron"
    assert i["matches_reference_row"] == "dodecahedron"
    assert all(r["availability"]["certified"] for r in rows.values())


def test_table1_csv(capsys):
    code, out, _ = run(capsys, "table1", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 6 and lines[1].startswith("tetrahedron,6,3,2,2,True")


# -- search ------------------------------------------------------------------


def test_search_k4(capsys):
    code, out, _ = run(capsys, "search", "6", "2", "2", "--expect-rate", "1/2", "--expect", "complete:4")
    assert code == 0 and json.loads(out)["max_dual_rate"] == "1/2"


def test_search_fano(capsys):
    code, out, _ = run(capsys, "search", "7", "2", "3", "--expect-rate", "3/7", "--expect", "fano")
    assert code == 0 and json.loads(out)["optima_count"] == 1


def test_search_without_expectations(capsys):
    code, out, _ = run(capsys, "search", "9", "2", "3")
    assert code == 0 and json.loads(out)["exhausted"] is True


def test_search_unmet_expectation(capsys):
    code, out, err = run(capsys, "search", "6", "2", "2", "--expect-rate", "2/3")
    assert code == 1 and json.loads(out)["expectations"]["met"] is False and err


@pytest.mark.parametrize("argv", [
    ("search", "10", "2", "3"),
    ("search", "12", "2", "2"),
    ("search", "6", "2", "2", "--expect-rate", "x"),
    ("search", "6", "2", "2", "--expect", "petersen"),
])
def test_search_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("error:")


# -- verify and determinism --------------------------------------------------


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--only", "1", "2")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 2 and all(ln.startswith("[PASS]") for ln in lines)


def test_verify_unknown_key(capsys):
    assert run(capsys, "verify", "--only", "99")[0] == 2


@pytest.mark.parametrize("argv", [
    ["construct", "platonic", "cube", "--with-enumerator"],
    ["bounds", "--names", "cor3", "bk1", "--sweep", "r", "--fix", "t=3", "--range", "3:20"],
    ["search", "9", "2", "2", "--jobs", "2"],
])
def test_byte_identical_output(argv):
    cmd = [sys.executable, "-m", "lrcavail", *argv]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
