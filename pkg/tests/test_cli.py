import json
import subprocess
import sys
from pathlib import Path

import pytest

from gl2modp import cli
from gl2modp.report import VerificationReport

PROBLEMS = Path(__file__).resolve().parents[1] / "demos" / "problems"

# (command, problem file, expected exit code)
CASES = [
    (["correspond"], "qplus1_split.ini", 0),
    (["correspond"], "qplus1_unramified.ini", 0),
    (["correspond"], "qplus1_q4.ini", 0),
    (["correspond"], "qminus1_split.ini", 0),
    (["correspond"], "qminus1_ext_omega_by_1.ini", 0),
    (["correspond"], "generic.ini", 0),
    (["correspond", "--brute-force"], "qplus1_unramified.ini", 0),
    (["correspond"], "unsupported_q3_p5.ini", 3),
    (["sigma"], "sigma_basic.ini", 0),
    (["sigma"], "sigma_boundary.ini", 0),
    (["sigma"], "sigma_equal.ini", 4),
    (["sigma"], "bad_key.ini", 2),
    (["lattices"], "sigma_basic.ini", 0),
    (["verify", "prop31"], "sigma_basic.ini", 0),
    (["verify", "main2"], "main2_q7.ini", 0),
]


def run(tmp_path, args, problem, name="out.json"):
    out = tmp_path / name
    code = cli.main(args + ["--input", str(PROBLEMS / problem), "--output", str(out)])
    return code, (out.read_bytes() if out.exists() else None)


@pytest.mark.parametrize("args,problem,code", CASES, ids=[f"{' '.join(a)}:{p}" for a, p, _ in CASES])
def test_exit_codes_and_determinism(tmp_path, args, problem, code):
    c1, b1 = run(tmp_path, args, problem, "a.json")
    c2, b2 = run(tmp_path, args, problem, "b.json")
    assert c1 == c2 == code
    assert b1 == b2
    if code == 0:
        assert b1.endswith(b"\n") and b"\r" not in b1
        doc = json.loads(b1)
        assert doc["version"] and "seed" in doc
        assert b1.decode() == cli.canonical_json(doc)


def test_result_contents(tmp_path):
    _, body = run(tmp_path, ["correspond"], "qplus1_split.ini")
    doc = json.loads(body)
    assert doc["result"]["variant"] == "UniversalV_q1"
    assert doc["result"]["jh"] == ["1_G", "1_G", "St"]
    _, body = run(tmp_path, ["correspond"], "qplus1_q4.ini")
    assert json.loads(body)["result"]["variant"] == "StExtension"
    _, body = run(tmp_path, ["sigma"], "sigma_boundary.ini")
    res = json.loads(body)["result"]
    assert res["level"] == 3 and res["certified_digits"] == 1 and "note" in res
    _, body = run(tmp_path, ["verify", "prop31"], "sigma_basic.ini")
    rep = json.loads(body)["report"]
    assert rep["passed"] and rep["counts"]["matches"] == rep["counts"]["nonsplit"] == 6


def test_unknown_key_is_named(tmp_path, capsys):
    assert run(tmp_path, ["correspond"], "bad_key.ini")[0] == 2
    assert "colour" in capsys.readouterr().err


def test_rejects_inconsistent_input(tmp_path, capsys):
    bad = tmp_path / "bad.ini"
    bad.write_text("[params]\np = 3\nell = 5\n\n[rep]\nshape = one_plus_omega\nsigma = u:1\n")
    assert cli.main(["correspond", "--input", str(bad)]) == 2
    assert "sigma" in capsys.readouterr().err
    bad.write_text("[params]\np = 3\nell = 7\nN = 4\n\n[chi1]\nt = 1, 1\n\n[chi2]\nu = 1\n")
    assert cli.main(["sigma", "--input", str(bad)]) == 2
    bad.write_text("[params]\np = 3\nell = 3\n")
    assert cli.main(["correspond", "--input", str(bad)]) == 2


def test_overrides(tmp_path):
    _, body = run(tmp_path, ["sigma", "--precision", "3"], "sigma_basic.ini")
    assert json.loads(body)["result"]["certified_digits"] == 2
    code = cli.main(["lattices", "--window", "3", "--input", str(PROBLEMS / "sigma_basic.ini")])
    assert code == 4    # window 3 needs N >= 7


def test_verification_failure_exit_code(tmp_path, monkeypatch):
    def failing(params, search):
        r = VerificationReport("main2", {"cases": 1}, [{"sigma": "forced"}], search.seed)
        return r
    monkeypatch.setattr(cli, "main2_sweep", failing)
    code, body = run(tmp_path, ["verify", "main2"], "main2_q7.ini")
    assert code == 1
    assert json.loads(body)["report"]["witnesses"] == [{"sigma": "forced"}]


def test_console_entry_point(tmp_path):
    out = tmp_path / "x.json"
    proc = subprocess.run([sys.executable, "-m", "gl2modp.cli", "correspond", "--input",
                           str(PROBLEMS / "qminus1_split.ini"), "--output", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(out.read_text())["result"]["variant"] == "V_qm1"


def test_selftest_is_deterministic(tmp_path):
    outs = []
    for name in ("s1.json", "s2.json"):
        out = tmp_path / name
        assert cli.main(["verify", "selftest", "--output", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["report"]["passed"]
