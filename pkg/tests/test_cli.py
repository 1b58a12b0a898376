import io as stdio
import json
import subprocess
import sys

import pytest

from recreg import io
from recreg.cli import run


def call(*argv):
    buf = stdio.StringIO()
    code = run(list(argv), out=buf)
    return code, json.loads(buf.getvalue())


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


QUADRANTS = {"kind": "fan", "dimension": 2, "complete": True,
             "rays": [[1, 0], [0, 1], [-1, 0], [0, -1]], "cells": [[0, 1], [1, 2], [2, 3], [3, 0]]}
LINE_POINTS = {"kind": "points", "points": [[0, 0], [3, 1], [6, 2], [-3, -1]]}


def test_check_regular_appendix_e():
    code, rep = call("check-regular", "fixtures/appendixE.json")
    assert code == 1 and not rep["regular"]
    assert set(rep["certificate"]) == {str(i) for i in range(1, 11)}


def test_check_regular_witness(tmp_path):
    doc = {"kind": "pointset-subdivision", "points": [[0, 0], [1, 0], [1, 1], [0, 1]], "cells": [[0, 1, 2], [0, 2, 3]]}
    code, rep = call("check-regular", write(tmp_path, "sq.json", doc))
    assert code == 0 and rep["regular"] and len(rep["witness"]) == 4


def test_check_recursive_appendix_f():
    code, rep = call("check-recursive", "fixtures/appendixF.json")
    assert code == 0 and rep["recursively_regular"] and rep["depth"] == 2


def test_check_recursive_appendix_d():
    code, rep = call("check-recursive", "appendixD.json")
    assert code == 1 and not rep["recursively_regular"]


def test_search_universal_appendix_c():
    code, rep = call("search-universal", "fixtures/appendixC-fan.json", "fixtures/appendixC-points.json")
    assert code == 1 and not rep["found"] and rep["permutations"] == len(rep["table"]) == 120
    assert {"wall": "12", "margin": -8} in [{k: r[k] for k in ("wall", "margin")} for r in rep["table"]]


def test_frc_tree_and_relax():
    code, rep = call("frc", "appendixE.json")
    assert code == 0 and rep["relaxed_walls"] == sorted(str(i) for i in range(1, 11))
    code, rep = call("tree", "appendixF.json")
    assert code == 0 and rep["depth"] == 2 and rep["frc_calls"] == 2
    code, rep = call("relax", "appendixD-rows.json")
    assert code == 0 and len(rep["E"]) == 13


def test_acyclic(tmp_path):
    assert call("acyclic", "twisted-fan.json", "--direction", "19/2,8,-7/64")[0] == 1
    code, rep = call("acyclic", "appendixC-fan.json", "--all", "--max-len", "5")
    assert code == 0 and rep["certificates"]
    assert call("acyclic", "appendixC-fan.json")[0] == 2
    assert call("acyclic", "appendixC-fan.json", "--direction", "1,x,0")[0] == 2


def test_assign_and_overlap(tmp_path):
    fan, pts = write(tmp_path, "f.json", QUADRANTS), write(tmp_path, "p.json", LINE_POINTS)
    code, rep = call("assign", fan, pts, "--line")
    assert code == 0 and rep["overlap_ok"]
    perm = ",".join(map(str, rep["assignment"]))
    assert call("verify-overlap", fan, pts, perm)[0] == 0
    code, rep = call("uncovered-2d", fan, pts, perm)
    assert code == 0 and rep["empty"]
    code, rep = call("assign", fan, pts, "--recursive")
    assert code == 0 and rep["overlap_ok"]
    code, rep = call("sample-coverage", fan, pts, perm, "--samples", "200", "--seed", "1")
    assert code == 0 and rep["fraction"] == 1


def test_verify_certificates():
    assert call("verify-certificate", "appendixE-rows-corrected.json", "appendixE-certificate.json")[0] == 0
    code, rep = call("verify-certificate", "appendixD-rows.json", "appendixD-certificate.json")
    assert code == 1 and any(rep["residual"])
    assert call("verify-certificate", "appendixD-rows.json", "appendixD-certificate-corrected.json")[0] == 0
    assert call("verify-certificate", "appendixC-fan.json", "appendixC-cycles-corrected.json")[0] == 0
    code, rep = call("verify-certificate", "appendixC-fan.json", "appendixC-cycles.json")
    assert code == 1 and sum(not c["valid"] for c in rep["cycles"]) == 2


def test_applications_commands(tmp_path):
    code, rep = call("spiderweb", "fig2-web.json")
    assert code == 0 and len(rep["redundant"]) == 10 and rep["rigid"]
    code, rep = call("embed-digraph", "square-digraph.json", "square-targets.json")
    assert code == 0 and rep["violations"] == 0
    assert call("forcing-cycle", "square-digraph.json") == (0, {"forcing_cycle": None})
    tri = {"kind": "digraph", "vertices": 3, "arcs": [[0, 1, [1, 0]], [1, 2, [1, 0]], [2, 0, [1, 0]]]}
    code, rep = call("forcing-cycle", write(tmp_path, "t.json", tri))
    assert code == 1 and rep["forcing_cycle"] == [0, 1, 2]


def test_plot(tmp_path):
    out = tmp_path / "e.svg"
    code, rep = call("plot", "appendixE.json", "--out", str(out), "--frc")
    assert code == 0 and out.read_text().startswith("<svg")
    assert call("plot", "appendixC-fan.json", "--out", str(tmp_path / "c.svg"))[0] == 0
    assert call("plot", "fig3-web.json", "--out", str(tmp_path / "w.svg"))[0] == 0
    fan = write(tmp_path, "f.json", QUADRANTS)
    code, rep = call("plot", fan, "--out", str(tmp_path / "q.svg"))
    assert code == 2 and not (tmp_path / "q.svg").exists()


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, rep = call("check-regular", str(bad))
    assert code == 2 and "bad.json:1:2" in rep["message"]
    code, rep = call("check-regular", "appendixC-points.json")
    assert code == 2 and rep["error"] == "UsageError"
    code, rep = call("assign", "appendixD.json", "appendixC-points.json", "--line")
    assert code == 2
    fan = write(tmp_path, "f.json", QUADRANTS)
    code, rep = call("assign", fan, write(tmp_path, "p.json", {"kind": "points", "points": [[0, 0]]}), "--line")
    assert code == 2 and rep["error"] == "PreconditionError"
    with pytest.raises(SystemExit) as err:
        run(["no-such-command"])
    assert err.value.code == 2


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "recreg.cli", "check-recursive", "appendixF.json"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["depth"] == 2
