from __future__ import annotations

import json
import subprocess
import sys

import pytest

from meettree import qftype_from_json, symtype_from_json
from meettree.cli import main
from test_serialize import parse_dot

FIG1 = {
    "nodes": ["a", "b", "c", "g", "p", "r"],
    "parent": {"a": "p", "b": "p", "c": "g", "g": "r", "p": "g"},
    "base": ["c", "g", "r"],
}


@pytest.fixture
def fig_file(tmp_path):
    path = tmp_path / "fig1.json"
    path.write_text(json.dumps(FIG1))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_validate_ok(capsys, fig_file):
    assert run(capsys, "validate", fig_file) == (0, "ok\n")


def test_validate_reports_violation(capsys, tmp_path):
    bad = tmp_path / "cyc.json"
    bad.write_text(json.dumps({"nodes": ["a", "b"], "parent": {"a": "b", "b": "a"}}))
    code, out = run(capsys, "validate", str(bad), "--json")
    assert code == 1
    assert json.loads(out) == {"ok": False, "violation": "invalid meet-tree: no root: 'a', 'b'"}


def test_missing_file_is_usage_error(capsys, tmp_path):
    code, _ = run(capsys, "validate", str(tmp_path / "absent.json"))
    assert code == 2


def test_unknown_subcommand_is_usage_error(capsys):
    assert main(["frobnicate"]) == 2
    assert main([]) == 2


def test_meet(capsys, fig_file):
    assert run(capsys, "meet", fig_file, "a", "c") == (0, "g\n")
    code, _ = run(capsys, "meet", fig_file, "a", "zz")
    assert code == 2


def test_closure(capsys, fig_file):
    code, out = run(capsys, "closure", fig_file, "a", "b", "c")
    assert code == 0
    assert out.split() == ["a", "b", "c", "g", "p"]
    _, as_json = run(capsys, "closure", fig_file, "a", "b", "--json")
    assert json.loads(as_json) == ["a", "b", "p"]


def test_gen_is_deterministic_and_seed_is_required(capsys):
    code, first = run(capsys, "gen", "12", "--seed", "9")
    assert code == 0
    _, second = run(capsys, "gen", "12", "--seed", "9")
    assert first == second
    doc = json.loads(first)
    assert len(doc["nodes"]) == 12
    assert main(["gen", "12"]) == 2


def test_gen_decorated(capsys):
    _, out = run(capsys, "gen", "10", "--seed", "4", "--density", "0.5")
    assert "R" in json.loads(out)["relations"]


def test_qftype_output_parses(capsys, fig_file):
    code, out = run(capsys, "qftype", fig_file, "--base", "r,g", "--tuple", "a,b")
    assert code == 0
    tp = qftype_from_json(json.loads(out))
    assert tp.var_count == 2 and tp.base == ("g", "r")


def test_witness(capsys, fig_file):
    code, out = run(capsys, "witness", fig_file, "--tuple", "a,b", "--json")
    assert code == 0
    data = json.loads(out)
    assert data == {"d": ["c", "p"], "c": ["c"], "anchors": {"a": "c", "b": "c", "p": "c"}}


def test_witness_cut_uncovered(capsys, fig_file, tmp_path):
    doc = {**FIG1, "base": ["r"]}
    path = tmp_path / "rbase.json"
    path.write_text(json.dumps(doc))
    code, out = run(capsys, "witness", str(path), "--tuple", "a", "--json")
    assert code == 1
    assert json.loads(out)["error"] == "cut-uncovered"


def test_wb_check_agrees(capsys, fig_file):
    code, out = run(
        capsys, "wb-check", "--file", fig_file,
        "--tuple1", "a", "--tuple2", "b", "--oracle", "--budget", "4",
    )
    assert (code, out) == (0, "AGREE\n")
    code, out = run(
        capsys, "wb-check", "--file", fig_file,
        "--tuple1", "a,b", "--tuple2", "c,p", "--json",
    )
    assert code == 0
    assert json.loads(out)["agree"] is True


def test_enumerate(capsys, fig_file):
    code, out = run(
        capsys, "enumerate", fig_file, "--base", "r,g", "--vars", "1", "--budget", "2"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "8"
    assert len(lines) == 9
    for line in lines[1:]:
        qftype_from_json(json.loads(line))


def test_enumerate_budget_error(capsys, fig_file):
    code, out = run(
        capsys, "enumerate", fig_file, "--base", "r,g", "--vars", "1",
        "--constraints", "x0 > g, x1 > x0", "--json",
    )
    assert code == 2  # x1 out of range for one variable


def test_tame(capsys, fig_file):
    assert run(capsys, "tame", fig_file, "--formula", "x < g") == (0, "witness: g\n")
    code, out = run(capsys, "tame", fig_file, "--formula", "x < b", "--witness", "g")
    assert code == 1
    assert out.startswith("counterexample")
    code, out = run(capsys, "tame", fig_file, "--formula", "x < p", "--json")
    assert code == 0
    assert json.loads(out)["counterexample"] is None


def test_classify(capsys, fig_file):
    code, out = run(capsys, "classify", fig_file, "a")
    assert (code, out) == (0, "II over r<g in a new cone\n")
    _, as_json = run(capsys, "classify", fig_file, "a", "--json")
    p = symtype_from_json(json.loads(as_json))
    assert p.kind == "II" and p.cut.max_point == "g"
    code, out = run(capsys, "classify", fig_file, "b", "--base", "a,g,r")
    assert (code, out) == (0, "IIIb over r<g in cone a\n")


def test_monoid_class(capsys, fig_file):
    code, out = run(capsys, "monoid", "class", fig_file, "--tuple", "a,b")
    assert (code, out) == (0, "1·s[g]\n")
    _, as_json = run(capsys, "monoid", "class", fig_file, "--tuple", "a,b", "--json")
    assert json.loads(as_json) == {"grafts": [], "sprouts": {"g": 1}}


def test_monoid_arithmetic(capsys, tmp_path):
    e1 = tmp_path / "e1.json"
    e2 = tmp_path / "e2.json"
    e1.write_text(json.dumps({"grafts": [], "sprouts": {"g": 1}}))
    e2.write_text(json.dumps({"grafts": [{"cut": "r"}], "sprouts": {"g": 2}}))
    code, out = run(capsys, "monoid", "mul", str(e1), str(e2))
    assert (code, out) == (0, "{x(r)} + 3·s[g]\n")
    assert run(capsys, "monoid", "leq", str(e1), str(e2)) == (0, "true\n")
    assert run(capsys, "monoid", "leq", str(e2), str(e1)) == (1, "false\n")
    assert run(capsys, "monoid", "wort", str(e1), str(e2)) == (1, "false\n")
    e3 = tmp_path / "e3.json"
    e3.write_text(json.dumps({"grafts": [{"cut": "r<h", "cone": "q"}], "sprouts": {}}))
    assert run(capsys, "monoid", "wort", str(e1), str(e3)) == (0, "true\n")


def test_amalgamate(capsys, tmp_path):
    def write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    over = write("a.json", {"nodes": ["r", "g"], "parent": {"g": "r"}})
    left = write("b.json", {"nodes": ["r", "g", "u"], "parent": {"g": "r", "u": "g"}})
    right = write("c.json", {"nodes": ["r", "g", "v"], "parent": {"g": "r", "v": "g"}})
    code, out = run(capsys, "amalgamate", over, left, right, "--json")
    assert code == 0
    data = json.loads(out)
    assert data["tree"]["nodes"] == ["g", "r", "u", "v"]
    assert data["from_left"]["u"] != data["from_right"]["v"]


def test_export(capsys, fig_file, tmp_path):
    code, out = run(capsys, "export", fig_file, "--dot")
    assert code == 0
    parse_dot(out)
    assert '"c" [shape=triangle];' in out
    target = tmp_path / "out.json"
    code, _ = run(capsys, "export", fig_file, "-o", str(target))
    assert code == 0
    assert json.loads(target.read_text()) == FIG1


def test_stdout_is_reproducible(capsys, fig_file):
    for argv in (
        ["qftype", fig_file, "--base", "r,g", "--tuple", "a,b"],
        ["witness", fig_file, "--tuple", "a,b", "--json"],
        ["export", fig_file, "--dot"],
    ):
        _, first = run(capsys, *argv)
        _, second = run(capsys, *argv)
        assert first == second


def test_module_entry_point(fig_file):
    proc = subprocess.run(
        [sys.executable, "-m", "meettree.cli", "meet", fig_file, "a", "c"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "g\n"
