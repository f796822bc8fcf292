import io
import json
import subprocess
import sys

import pytest

from arithcurves.cli import run

CLI = [sys.executable, "-m", "arithcurves.cli"]


def invoke(*args):
    buf = io.StringIO()
    code = run(list(args), out=buf)
    return code, buf.getvalue()


def invoke_json(*args):
    code, text = invoke(*args)
    assert code == 0, text
    return json.loads(text)


def test_rootsys_verb():
    doc = invoke_json("rootsys", "--type", "A2")
    assert doc["kind"] == "rootsys"
    assert doc["count"] == 6 and doc["weyl_order"] == 6
    assert doc["gram"] == [["2", "-1"], ["-1", "2"]]


def test_rootsys_unsupported_exits_2():
    proc = subprocess.run(CLI + ["rootsys", "--type", "E8"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert "unsupported type" in proc.stderr
    assert proc.stdout == ""                      # no partial JSON


def test_chevalley_verb():
    doc = invoke_json("chevalley", "--type", "A1", "--center", "1", "--verify")
    assert doc["dim"] == 4
    assert doc["verification"]["ok"]
    # sl2: [x(1), x(-1)] = h(1)
    rec = next(r for r in doc["bracket"] if r["x"] == "x(1)" and r["y"] == "x(-1)")
    assert rec["result"] == [0, 0, 1, 0]


def test_chi_verbs():
    doc = invoke_json("chi", "--matrix", '[["0","1"],["2","0"]]')
    assert doc["invariants"] == ["0", "-2"]
    doc = invoke_json("chi", "--torus-point", '["1","2","3"]', "--type", "gl3")
    assert doc["type"] == "gl_3" and doc["invariants"] == ["6", "11", "6"]


def test_chi_usage_errors():
    proc = subprocess.run(CLI + ["chi"], capture_output=True, text=True)
    assert proc.returncode == 2
    proc = subprocess.run(CLI + ["chi", "--matrix", "[[1,", ],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stdout == ""


def test_degree_verb():
    doc = invoke_json("degree", "--field", "Q(sqrt(-5))",
                      "--ideal", '["2", "1+w"]', "--metrics", '["1"]')
    assert doc["ideal_norm"] == "2"
    assert doc["ideal_hnf"] == [["1", "1"], ["0", "2"]]
    assert abs(float(doc["degree"]) + 0.6931471805599453) < 1e-9


def test_curve_verb_and_domain_error():
    doc = invoke_json("curve", "--matrix", '[["0","1"],["2","0"]]',
                      "--field", "Q", "--fibers", "100")
    assert doc["kind"] == "spectral"
    assert doc["poly"] == ["1", "0", "-2"] and doc["disc"] == "8"
    assert doc["ramified"] == [{"p": 2, "pattern": [[1, 2]]}]
    assert doc["covering_ok"] is True
    # nilpotent Higgs field: degenerate, fiber analysis refuses with exit 1
    code, text = invoke("curve", "--matrix", '[["0","1"],["0","0"]]',
                        "--fibers", "10")
    assert code == 1
    err = json.loads(text)
    assert err["error"]["type"] == "DegenerateCurve"


def test_curve_membership_error_is_domain_error():
    code, text = invoke("curve", "--matrix", '[["1","0"],["0","1"]]',
                        "--twist", '["2"]')
    assert code == 1
    assert json.loads(text)["error"]["type"] == "MembershipFailure"


def test_cameral_verb():
    doc = invoke_json("curve", "--matrix", '[["1","0"],["0","2"]]', "--cameral")
    assert doc["kind"] == "cameral" and doc["degree"] == 2
    assert doc["rational_points"] == [["1", "2"], ["2", "1"]]


def test_slope_verb(tmp_path):
    spec = {"field": "Q(sqrt(-5))", "rank": 2,
            "ideals": [["1"], ["2", "1+w"]],
            "metrics": [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]]]}
    f = tmp_path / "torsor.json"
    f.write_text(json.dumps(spec))
    doc = invoke_json("slope", "--torsor", str(f), "--char", "2")
    assert abs(float(doc["slope"]) + 2 * 0.6931471805599453) < 1e-9


def test_verify_round_trip_all_verbs(tmp_path):
    spec = {"field": "Q", "rank": 2, "ideals": [["1"], ["1"]],
            "metrics": [[["2", "0"], ["0", "1"]]]}
    torsor_file = tmp_path / "t.json"
    torsor_file.write_text(json.dumps(spec))
    commands = [
        ["rootsys", "--type", "G2", "--weyl"],
        ["chevalley", "--type", "B2", "--verify"],
        ["chi", "--matrix", '[["1","2"],["3","4"]]'],
        ["chi", "--torus-point", '["1","2"]', "--type", "B2"],
        ["degree", "--field", "Q(i)", "--ideal", '["1+i"]', "--metrics", '["2.0"]'],
        ["slope", "--torsor", str(torsor_file), "--char", "1"],
        ["curve", "--matrix", '[["0","1"],["2","0"]]', "--fibers", "50"],
        ["curve", "--matrix", '[["1","0"],["0","2"]]', "--cameral"],
    ]
    for i, cmd in enumerate(commands):
        out = invoke_json(*cmd)
        f = tmp_path / f"out{i}.json"
        f.write_text(json.dumps(out))
        verdict = invoke_json("verify", "--input", str(f))
        assert verdict["ok"], (cmd, verdict)
    # verify of a verify output is accepted
    f = tmp_path / "verify.json"
    f.write_text(json.dumps(invoke_json("verify", "--input", str(tmp_path / "out0.json"))))
    assert invoke_json("verify", "--input", str(f))["ok"]


def test_json_args_from_file(tmp_path):
    f = tmp_path / "m.json"
    f.write_text('[["0","1"],["2","0"]]')
    doc = invoke_json("chi", "--matrix", f"@{f}")
    assert doc["invariants"] == ["0", "-2"]
    doc = invoke_json("curve", "--matrix", f"@{f}", "--fibers", "10")
    assert doc["disc"] == "8"
    proc = subprocess.run(CLI + ["chi", "--matrix", "@/nonexistent.json"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stdout == ""


def test_verify_torsor_file_reports_clauses(tmp_path):
    spec = {"field": "Q", "rank": 2, "ideals": [["1"], ["3"]],
            "metrics": [[["2", "0"], ["0", "1"]]]}
    f = tmp_path / "torsor.json"
    f.write_text(json.dumps(spec))
    doc = invoke_json("verify", "--input", str(f))
    assert doc["input_kind"] == "torsor" and doc["ok"]
    report = doc["reports"][0]
    for clause in ("involution", "reflection", "eigenspaces", "isometry", "splitting"):
        assert clause in report and report[clause]["ok"]


def test_verify_flags_tampering(tmp_path):
    doc = invoke_json("chi", "--matrix", '[["1","2"],["3","4"]]')
    doc["invariants"] = ["7", "-2"]
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(doc))
    code, text = invoke("verify", "--input", str(f))
    assert code == 1
    assert not json.loads(text)["ok"]


@pytest.mark.parametrize("args", [
    ["rootsys", "--type", "B3", "--weyl"],
    ["chevalley", "--type", "G2", "--verify"],
    ["chi", "--matrix", '[["0","1"],["2","0"]]'],
    ["degree", "--field", "Q(sqrt(2))", "--ideal", '["3", "1+2*w"]',
     "--metrics", '["1.5", "0.5"]'],
    ["curve", "--matrix", '[["0","1","0"],["0","0","1"],["1","1","0"]]',
     "--fibers", "60"],
])
def test_byte_determinism_across_processes(args):
    a = subprocess.run(CLI + args, capture_output=True)
    b = subprocess.run(CLI + args, capture_output=True)
    assert a.returncode == 0 and b.returncode == 0
    assert a.stdout == b.stdout
