"""Problem files: a sectioned key-value text format read with configparser.

Example::

    [params]
    p = 3
    ell = 7
    N = 3

    [rep]
    shape = one_plus_omega
    sigma = u:1, t:0

    [chi1]
    u = 1, 1

    [search]
    mode = full
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass
from typing import Optional

from .characters import (CFT_NORMALIZATIONS, ResidualCharacter, ResidualHom,
                         character_from_digits)
from .correspondence import (DEFAULT_SEED, Generic, LocalParams, ResidualGaloisRep,
                             SearchParams, one_plus_omega)
from .dvr import BACKENDS, make_dvr
from .errors import GL2Error, InvalidInput
from .field import FiniteFieldCtx

ALLOWED = {
    "params": {"p", "ell", "f", "N", "modulus", "backend", "normalization"},
    "rep": {"shape", "case", "sigma", "twist", "support"},
    "search": {"mode", "max_candidates", "seed", "window", "precision"},
}
CHAR_SECTIONS = ("chi1", "chi2")
SHAPES = ("one_plus_omega", "generic")


class ProblemError(InvalidInput):
    def __init__(self, section, key, message):
        where = f"[{section}]" + (f" {key}" if key else "")
        super().__init__(f"{where}: {message}")
        self.section = section
        self.key = key


def _int(raw, section, key):
    try:
        return int(raw)
    except ValueError:
        raise ProblemError(section, key, f"expected an integer, got {raw!r}") from None


def _int_list(raw, section, key):
    parts = [x.strip() for x in raw.split(",") if x.strip()]
    return [_int(x, section, key) for x in parts]


def parse_assignment(raw: str, section: str, key: str) -> dict:
    """'u:1, t:0' -> {'u': 1, 't': 0}."""
    out = {}
    for item in raw.split(","):
        item = item.strip()
        if not item:
            continue
        name, sep, value = item.partition(":")
        if not sep:
            raise ProblemError(section, key, f"expected name:value, got {item!r}")
        name = name.strip()
        if name in out:
            raise ProblemError(section, key, f"generator {name!r} given twice")
        out[name] = _int(value.strip(), section, key)
    return out


@dataclass
class Problem:
    raw: dict
    params: LocalParams
    N: int
    backend: str
    search: SearchParams
    window: int
    rep: Optional[ResidualGaloisRep] = None
    chi1: object = None
    chi2: object = None

    @property
    def ring(self):
        return make_dvr(self.params.field, self.N, self.backend)

    @property
    def seed(self):
        return self.search.seed


def _wrap(section, key, fn, *args):
    try:
        return fn(*args)
    except ProblemError:
        raise
    except GL2Error as exc:
        if isinstance(exc, InvalidInput):
            raise ProblemError(section, key, str(exc)) from exc
        raise


def read_problem_text(text: str, seed=None, precision=None, window=None) -> Problem:
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ProblemError("file", None, f"cannot parse: {exc}") from None
    raw = {s: dict(cp[s]) for s in cp.sections()}
    for section, keys in raw.items():
        if section in ALLOWED:
            extra = set(keys) - ALLOWED[section]
            if extra:
                raise ProblemError(section, sorted(extra)[0], "unknown key")
        elif section not in CHAR_SECTIONS:
            raise ProblemError(section, None, "unknown section")
    if "params" not in raw:
        raise ProblemError("params", None, "section is required")
    P = raw["params"]
    for key in ("p", "ell"):
        if key not in P:
            raise ProblemError("params", key, "is required")
    p = _int(P["p"], "params", "p")
    ell = _int(P["ell"], "params", "ell")
    f = _int(P.get("f", "1"), "params", "f")
    N = _int(P.get("N", "3"), "params", "N")
    if precision is not None:
        N = precision
    modulus = None
    d = 1
    if "modulus" in P:
        modulus = _int_list(P["modulus"], "params", "modulus")
        d = len(modulus) - 1
    backend = P.get("backend", "series")
    if backend not in BACKENDS:
        raise ProblemError("params", "backend", f"must be one of {BACKENDS}")
    normalization = P.get("normalization", CFT_NORMALIZATIONS[0])
    if normalization not in CFT_NORMALIZATIONS:
        raise ProblemError("params", "normalization", f"must be one of {CFT_NORMALIZATIONS}")
    field = _wrap("params", "modulus", FiniteFieldCtx, p, d, modulus)
    params = _wrap("params", "ell", LocalParams, p, ell, f, field, normalization)
    _wrap("params", "N", make_dvr, field, N, backend)

    S = raw.get("search", {})
    window = window if window is not None else _int(S.get("window", "1"), "search", "window")
    if window < 0:
        raise ProblemError("search", "window", "must be non-negative")
    if seed is None:
        seed = _int(S.get("seed", str(DEFAULT_SEED)), "search", "seed")
    search = _wrap("search", "mode", SearchParams,
                   _int(S.get("precision", str(N)), "search", "precision"),
                   _int(S.get("max_candidates", "100000"), "search", "max_candidates"),
                   S.get("mode", "full"), seed, backend)

    prob = Problem(raw, params, N, backend, search, window)
    group = params.group
    for name in CHAR_SECTIONS:
        if name in raw:
            digits = {}
            for g, v in raw[name].items():
                if g not in group.names:
                    raise ProblemError(name, g, f"unknown generator (have {group.names})")
                digits[g] = _int_list(v, name, g)
            chi = _wrap(name, None, character_from_digits, group, prob.ring, digits)
            setattr(prob, name, chi)
    if "rep" in raw:
        prob.rep = _read_rep(raw["rep"], params)
    return prob


def _residual(values, section, key, cls, params):
    try:
        return cls.from_dict(params.group, params.field, values)
    except InvalidInput as exc:
        raise ProblemError(section, key, str(exc)) from exc


def _read_rep(R: dict, params: LocalParams) -> ResidualGaloisRep:
    shape = R.get("shape")
    if shape not in SHAPES:
        raise ProblemError("rep", "shape", f"must be one of {SHAPES}")
    twist = None
    if "twist" in R:
        twist = _residual(parse_assignment(R["twist"], "rep", "twist"), "rep", "twist",
                          ResidualCharacter, params)
    if shape == "generic":
        for key in ("case", "sigma"):
            if key in R:
                raise ProblemError("rep", key, "not allowed for the generic shape")
        support = tuple(x.strip() for x in R.get("support", "").split(","))
        if len(support) != 2 or not all(support):
            raise ProblemError("rep", "support", "needs two comma-separated labels")
        return _wrap("rep", "support", ResidualGaloisRep, params,
                     twist or params.trivial_twist(), Generic(support))
    if "support" in R:
        raise ProblemError("rep", "support", "only allowed for the generic shape")
    sigma = None
    if "sigma" in R:
        sigma = _residual(parse_assignment(R["sigma"], "rep", "sigma"), "rep", "sigma",
                          ResidualHom, params)
    case = R.get("case")
    if case is not None and case not in ("split", "ext_1_by_omega", "ext_omega_by_1"):
        raise ProblemError("rep", "case", "must be split, ext_1_by_omega or ext_omega_by_1")
    key = "case" if case is not None else "sigma"
    return _wrap("rep", key, one_plus_omega, params, case, sigma, twist)


def read_problem(path, **overrides) -> Problem:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ProblemError("file", None, f"cannot read {path}: {exc.strerror}") from None
    return read_problem_text(text, **overrides)
