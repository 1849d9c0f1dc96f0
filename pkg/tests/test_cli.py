import json
import subprocess
import sys
from pathlib import Path

import pytest

from gafcheck.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines() if line.startswith("{")], out


def test_perm_eccentric_with_fixating(capsys):
    code, (res,), _ = run(capsys, "analyze", "perm", DATA / "s5_order6.json", "--fixating")
    assert code == 0
    assert res["kind"] == "ECCENTRIC" and res["order"] == 6 and res["fixating"] is False
    assert res["fix_table"]["(1 2)(4 5)"] == [3]


def test_malformed_cycles_exit_2(capsys):
    code, (res,), _ = run(capsys, "analyze", "perm", DATA / "malformed.json")
    assert code == 2 and res["error"] == "PARSE_ERROR"


def test_missing_file_exit_2(capsys, tmp_path):
    code, (res,), _ = run(capsys, "analyze", "perm", tmp_path / "none.json")
    assert code == 2 and res["error"] == "PARSE_ERROR"


def test_bad_json_exit_2(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"degree": 3,\n "generators": [}')
    code, (res,), _ = run(capsys, "analyze", "perm", path)
    assert code == 2 and res["payload"] == {"line": 2, "column": 17}


def test_gl23(capsys):
    code, (res,), _ = run(capsys, "analyze", "matrix", DATA / "gl23.json")
    assert code == 0 and res["kind"] == "ECCENTRIC" and res["order"] == 6


def test_lattice_swap(capsys):
    code, (res,), _ = run(capsys, "analyze", "matrix", DATA / "lattice_swap.json")
    assert code == 0 and res["kind"] == "GAG" and res["point"] == [1, 0]


def test_tree(capsys):
    code, (res,), _ = run(capsys, "analyze", "tree", DATA / "path5.json")
    assert code == 0 and res["vertex"] == 3 and res["center"] == {"kind": "vertex", "vertices": [3]}


def test_tree_fixpoint_spider(capsys):
    code, (res,), _ = run(capsys, "tree-fixpoint", DATA / "spider.json", "--seed-vertex", 3)
    assert code == 0 and res == {"orbit_center": 1, "vertex": 1}


def test_tree_fixpoint_bowtie(capsys):
    code, (res,), _ = run(capsys, "tree-fixpoint", DATA / "bowtie.json")
    assert code == 0 and res["vertex"] == 3 and len(res["cells"]) == 2


def test_colored_graph(capsys):
    code, (res,), _ = run(capsys, "analyze", "colored-graph", DATA / "bowtie.json")
    assert code == 0 and res["vertex"] == 3


def test_not_gaf_exit_1(capsys, tmp_path):
    path = tmp_path / "inv.json"
    path.write_text(json.dumps({"n": 2, "edges": [[1, 2]], "generators": ["(1 2)"]}))
    code, (res,), _ = run(capsys, "tree-fixpoint", path)
    assert code == 1 and res["error"] == "NOT_GAF"


def test_circumcenter(capsys):
    code, (res,), _ = run(capsys, "circumcenter", DATA / "hyperbolic_pair.json")
    assert code == 0
    assert res["center"] == pytest.approx([0, 2], abs=1e-12)
    assert res["radius"] == pytest.approx(0.6931471805599453, abs=1e-12)


def test_classify_elliptic(capsys):
    code, (res,), _ = run(capsys, "classify-isometry", DATA / "elliptic.json")
    assert code == 0 and res["class"] == "ELLIPTIC"
    assert res["fixed_point"] == pytest.approx([0, 1])


def test_classify_pair(capsys):
    code, (res,), _ = run(capsys, "classify-isometry", DATA / "quarter_turns_h3.json")
    assert code == 0 and res["pair"]["kind"] == "WITNESS"


@pytest.mark.parametrize("argv", [["bogus"], ["analyze", "nope", "x.json"], ["verify-paper", "--only", "nothing"],
                                  ["verify-paper", "--corrupt", "nothing"]])
def test_usage_errors(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_list(capsys):
    code, _, out = run(capsys, "verify-paper", "--list")
    ids = [line.split("\t")[0] for line in out.splitlines()]
    assert code == 0 and len(ids) == 43 and ids == sorted(ids)


def test_verify_subset_json(capsys):
    code, lines, _ = run(capsys, "verify-paper", "--only", "perm.symmetric", "tree.examples", "--json")
    assert code == 0
    *results, summary = lines
    assert [r["status"] for r in results] == ["PASS"] * len(results)
    assert summary["summary"]["total"] == len(results) == 7
    assert summary["summary"]["manifest"]["seed"] == 1729
    assert all("elapsed" not in r for r in results)


def test_corrupt_exit_1(capsys):
    code, lines, _ = run(capsys, "verify-paper", "--only", "tree", "--corrupt", "tree.examples", "--json")
    assert code == 1 and lines[-1]["summary"]["failed"] == ["tree.examples"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gafcheck", "analyze", "tree", str(DATA / "path5.json")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["vertex"] == 3
