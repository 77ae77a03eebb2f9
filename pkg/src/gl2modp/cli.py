"""gl2modp command line: correspond, sigma, lattices, verify.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 unsupported case, 4 precision or indistinguishability error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import __version__
from .characters import congruence_level, sigma_class
from .correspondence import DEFAULT_SEED, brute_force_correspond, correspond
from .errors import GL2Error, InvalidInput, PrecisionError, UnsupportedCase
from .lattices import (diagonal_module, enumerate_stable_lattices,
                       reduction_extension_direct, verify_prop_class)
from .problem import Problem, ProblemError, read_problem
from .verify import main2_sweep, census_sweep, selftest

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_UNSUPPORTED, EXIT_PRECISION = range(5)


def _codes(h) -> dict:
    """Generator -> field element code, the on-disk form of a class or character."""
    return {g: v.code for g, v in h.as_dict().items()}


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_atomic(path, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".gl2modp-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def describe(desc) -> dict:
    out = {
        "variant": desc.variant.value,
        "jh": list(desc.jh),
        "socle": desc.socle,
        "twist": _codes(desc.twist),
    }
    if desc.class_line is not None:
        out["class_line"] = _codes(desc.class_line.rep)
    if desc.kind is not None:
        out["kind"] = desc.kind.value
    if desc.support is not None:
        out["support"] = list(desc.support)
    return out


def _need_rep(prob: Problem):
    if prob.rep is None:
        raise ProblemError("rep", None, "section is required for this command")
    return prob.rep


def _need_chars(prob: Problem):
    for name in ("chi1", "chi2"):
        if getattr(prob, name) is None:
            raise ProblemError(name, None, "section is required for this command")
    return prob.chi1, prob.chi2


def cmd_correspond(prob: Problem, args) -> tuple[dict, int]:
    rho = _need_rep(prob)
    desc = brute_force_correspond(rho, prob.search) if args.brute_force else correspond(rho)
    return {"result": describe(desc), "method": "brute_force" if args.brute_force else "engine"}, EXIT_OK


def cmd_sigma(prob: Problem, args):
    chi1, chi2 = _need_chars(prob)
    a = congruence_level(chi1, chi2)
    s = sigma_class(chi1, chi2)
    N = prob.ring.N
    result = {"level": a, "sigma": _codes(s), "line": _codes(s.normalized()),
              "certified_digits": N - a}
    if a == N - 1:
        result["note"] = "level a = N - 1: sigma rests on the single certified digit at w^(N-1)"
    return {"result": result}, EXIT_OK


def cmd_lattices(prob: Problem, args):
    chi1, chi2 = _need_chars(prob)
    mod = diagonal_module(chi1, chi2)
    rows = []
    for L in enumerate_stable_lattices(mod, prob.window):
        red = reduction_extension_direct(L, mod)
        row = {"r": L.r, "s": L.s, "off": list(L.off_digits()),
               "distance": L.distance, "split": red.split}
        if not red.split:
            row["class_line"] = _codes(red.class_line)
        rows.append(row)
    result = {"level": mod.level, "window": prob.window, "stable": len(rows),
              "nonsplit": sum(not r["split"] for r in rows), "lattices": rows}
    return {"result": result}, EXIT_OK


def cmd_verify(prob, args):
    kind = args.kind
    if kind == "selftest":
        seed = prob.seed if prob is not None else args.seed
        report = selftest(DEFAULT_SEED if seed is None else seed)
    elif prob is None:
        raise ProblemError("file", None, f"verify {kind} needs --input")
    elif kind == "prop31":
        if prob.chi1 is not None or prob.chi2 is not None:
            report = verify_prop_class(diagonal_module(*_need_chars(prob)), prob.window)
        else:
            P = prob.params
            report = census_sweep(configs=((P.p, P.ell, P.f),), windows=(prob.window,),
                                  backend=prob.backend)
    else:
        report = main2_sweep(prob.params, prob.search)
    print(report.summary(), file=sys.stderr)
    return {"report": report.to_json()}, EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {"correspond": cmd_correspond, "sigma": cmd_sigma,
            "lattices": cmd_lattices, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gl2modp", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"gl2modp {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, input_required=True):
        p.add_argument("--input", required=input_required, help="problem file")
        p.add_argument("--output", help="result file (JSON); stdout when omitted")
        p.add_argument("--seed", type=int, help="override the search seed")
        p.add_argument("--precision", type=int, help="override N")
        p.add_argument("--window", type=int, help="override the lattice window c")
        return p

    corr = common(sub.add_parser("correspond", help="compute the smooth representation"))
    corr.add_argument("--brute-force", action="store_true", help="use the sum-of-lifts oracle")
    common(sub.add_parser("sigma", help="congruence level and sigma of two characters"))
    common(sub.add_parser("lattices", help="dump stable lattices in the window"))
    ver = common(sub.add_parser("verify", help="run a verification sweep"), input_required=False)
    ver.add_argument("kind", choices=("prop31", "main2", "selftest"))
    return ap


def run(args) -> int:
    prob = None
    if args.input is not None:
        prob = read_problem(args.input, seed=args.seed, precision=args.precision,
                            window=args.window)
    payload, code = COMMANDS[args.command](prob, args)
    payload.update(
        tool="gl2modp", version=__version__, command=args.command,
        input=prob.raw if prob is not None else None,
        seed=prob.seed if prob is not None else payload["report"]["seed"],
    )
    if args.command == "verify":
        payload["kind"] = args.kind
    text = canonical_json(payload)
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except UnsupportedCase as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except PrecisionError as exc:
        print(f"precision: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except InvalidInput as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except GL2Error as exc:  # pragma: no cover - every concrete error has a subclass above
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
