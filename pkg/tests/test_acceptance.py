"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import json
import random
import time
from pathlib import Path

import pytest

from gl2modp import cli
from gl2modp.characters import hom_space_dim, norm_character, standard_model
from gl2modp.correspondence import (QMinus1Case, SearchParams, Variant, WKind, correspond,
                                    local_params, one_plus_omega, twist_galois, twist_rep)
from gl2modp.ext import torus_model
from gl2modp.report import VerificationReport
from gl2modp.verify import (compatibility_check, main2_sweep, census_sweep, random_rep,
                            random_twist, sigma_properties)

PROBLEMS = Path(__file__).resolve().parents[1] / "demos" / "problems"
SEED = 20130901


@pytest.fixture
def verdict(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[AC{number}] {'PASS' if ok else 'FAIL'} {title}: {detail}")
        return ok
    return emit


def test_ac1_two_path_lattice_census(verdict):
    t0 = time.perf_counter()
    report = census_sweep(levels=(1, 2), windows=(1, 2), headroom=4)
    elapsed = time.perf_counter() - t0
    c = report.counts
    ok = report.passed and c["matches"] == c["nonsplit"] > 0 and elapsed < 60
    verdict(1, "lattice census, direct and formula paths agree with sigma",
            ok, f"{c['matches']}/{c['nonsplit']} nonsplit classes match over "
                f"{c['modules']} modules, {elapsed:.1f}s (limit 60s)")
    assert ok, report.witnesses[:3]


def test_ac2_engine_equals_oracle(verdict):
    t0 = time.perf_counter()
    report = main2_sweep(local_params(3, 7), SearchParams(precision=3, mode="full"))
    elapsed = time.perf_counter() - t0
    ok = report.passed and report.counts == {"cases": 5, "agreements": 5} and elapsed < 60
    verdict(2, "brute-force sum of lifts equals the engine, q=7 p=3 N=3",
            ok, f"{report.counts.get('agreements', 0)}/5 exact matches, {elapsed:.1f}s (limit 60s)")
    assert ok, report.witnesses


def test_ac3_qminus1_dispatch_table(verdict):
    P = local_params(3, 5)
    expect = {
        QMinus1Case.SPLIT: (Variant.V_QM1, None, ("1_G", "pi_gen", "|.|det")),
        QMinus1Case.EXT_1_BY_OMEGA: (Variant.W_QM1, WKind.WDUAL_TWIST, ("pi_gen", "|.|det")),
        QMinus1Case.EXT_OMEGA_BY_1: (Variant.W_QM1, WKind.WDUAL, ("1_G", "pi_gen")),
    }
    hits = 0
    for case, (variant, kind, jh) in expect.items():
        d = correspond(one_plus_omega(P, case=case.value))
        hits += (d.variant, d.kind, d.jh, d.socle) == (variant, kind, jh, "pi_gen")
    ok = hits == 3
    verdict(3, "q = -1 mod p dispatch table with Jordan-Holder multisets", ok, f"{hits}/3 exact")
    assert ok


def test_ac4_compatibility_identity(verdict):
    report = compatibility_check(random.Random(SEED), n=200)
    checked = sum(v for k, v in report.counts.items() if k.endswith(".checked"))
    good = sum(v for k, v in report.counts.items() if k.endswith(".ok"))
    ok = report.passed and checked == good == 600
    verdict(4, "phi(sigma) equals the T/Z restriction of the torus class",
            ok, f"{good}/{checked} pairs over q = 7, 11, 4 (200 each)")
    assert ok, report.witnesses[:3]


def test_ac5_sigma_properties(verdict):
    report = sigma_properties(random.Random(SEED), n=1000)
    c = report.counts
    ok = (report.passed and c["antisymmetry.ok"] == 1000 and c["additivity.ok"] == 1000)
    verdict(5, "sigma antisymmetry and word additivity", ok,
            f"antisymmetry {c.get('antisymmetry.ok', 0)}/1000, additivity {c.get('additivity.ok', 0)}/1000")
    assert ok, report.witnesses[:3]


def test_ac6_dimensions(verdict):
    rows = []
    for p, ell, f in ((3, 7, 1), (5, 11, 1), (3, 2, 2)):
        G = standard_model(p, ell, f)
        rows.append((hom_space_dim(G), hom_space_dim(torus_model(G))))
    ok = all(r == (2, 4) for r in rows)
    verdict(6, "Hom(T/Z,k) is 2-dimensional and Hom(T,k) is 4-dimensional", ok,
            ", ".join(f"{a}/{b}" for a, b in rows))
    assert ok


def test_ac7_twist_equivariance_and_involution(verdict):
    rng = random.Random(SEED)
    tallies = {}
    for regime, (p, ell) in (("q=+1", (3, 7)), ("q=-1", (3, 5))):
        P = local_params(p, ell)
        nrm = norm_character(P.group, P.field)
        good = 0
        for _ in range(20):
            rho, chi = random_rep(P, rng), random_twist(P, rng)
            d = correspond(rho)
            good += (correspond(twist_galois(rho, chi)) == twist_rep(d, chi)
                     and twist_rep(twist_rep(d, nrm), nrm) == d)
        tallies[regime] = good
    ok = all(v == 20 for v in tallies.values())
    verdict(7, "twist equivariance and the |.|det involution", ok,
            ", ".join(f"{k}: {v}/20" for k, v in tallies.items()))
    assert ok


CLI_CASES = [
    (["correspond"], "qplus1_split.ini", 0),
    (["correspond"], "qplus1_unramified.ini", 0),
    (["correspond"], "qplus1_q4.ini", 0),
    (["correspond"], "qminus1_split.ini", 0),
    (["correspond"], "qminus1_ext_omega_by_1.ini", 0),
    (["correspond"], "generic.ini", 0),
    (["correspond"], "unsupported_q3_p5.ini", 3),
    (["sigma"], "sigma_basic.ini", 0),
    (["sigma"], "sigma_boundary.ini", 0),
    (["sigma"], "sigma_equal.ini", 4),
    (["correspond"], "bad_key.ini", 2),
    (["lattices"], "sigma_basic.ini", 0),
    (["verify", "prop31"], "sigma_basic.ini", 0),
    (["verify", "main2"], "main2_q7.ini", 0),
    (["verify", "selftest"], None, 0),
]


def test_ac8_cli_determinism_and_exit_codes(verdict, tmp_path, monkeypatch):
    identical, codes_seen, wrong = 0, set(), []
    for i, (args, problem, want) in enumerate(CLI_CASES):
        extra = ["--input", str(PROBLEMS / problem)] if problem else []
        bodies, codes = [], []
        for run in (0, 1):
            out = tmp_path / f"{i}-{run}.json"
            codes.append(cli.main(args + extra + ["--output", str(out)]))
            bodies.append(out.read_bytes() if out.exists() else b"")
        identical += bodies[0] == bodies[1]
        codes_seen.update(codes)
        if codes != [want, want]:
            wrong.append((args, problem, codes))

    def failing(params, search):
        return VerificationReport("main2", {"cases": 1}, [{"forced": True}], search.seed)
    monkeypatch.setattr(cli, "main2_sweep", failing)
    out = tmp_path / "fail.json"
    codes_seen.add(cli.main(["verify", "main2", "--input", str(PROBLEMS / "main2_q7.ini"),
                             "--output", str(out)]))
    ok = identical == len(CLI_CASES) and not wrong and codes_seen == {0, 1, 2, 3, 4}
    verdict(8, "byte-identical result files and every exit code", ok,
            f"{identical}/{len(CLI_CASES)} identical, exit codes seen {sorted(codes_seen)}")
    assert ok, wrong
    assert json.loads(out.read_text())["report"]["passed"] is False
