"""Verification sweeps: lattice census, engine-vs-oracle, invariant self-test."""

from __future__ import annotations

import itertools
import random

from .characters import (ResidualCharacter, ResidualHom, UnitCharacter,
                         character_from_digits, hom_space_dim,
                         make_unit_character, norm_character, sigma_class,
                         standard_model, trivial_character, valid_values)
from .correspondence import (DEFAULT_SEED, LocalParams, QMinus1Case, SearchParams,
                             Variant, brute_force_correspond, correspond,
                             enumerate_lifts, lift_reduction, local_params,
                             one_plus_omega, twist_galois, twist_rep)
from .dvr import make_dvr
from .errors import InvalidInput
from .ext import (phi, restrict_to_TZ, t_side_class, torus_model, tz_lines,
                  unramified_line)
from .field import FiniteFieldCtx
from .lattices import diagonal_module, verify_prop_class
from .report import VerificationReport

# (p, ell, f): q = 7, 11, 4 are 1 mod p; q = 5 is -1 mod 3
CENSUS_CONFIGS = ((3, 7, 1), (5, 11, 1), (3, 2, 2), (3, 5, 1))
QPLUS1_CONFIGS = ((3, 7, 1), (5, 11, 1), (3, 2, 2))
QMINUS1_CONFIGS = ((3, 5, 1), (5, 19, 1))


class CharacterSampler:
    """Uniform residually trivial characters of the standard model at precision N."""

    def __init__(self, group, ring, rng: random.Random):
        self.group, self.ring, self.rng = group, ring, rng
        self.pools = [valid_values(group, ring, g) for g in group.names]

    def __call__(self) -> UnitCharacter:
        return UnitCharacter(self.group, tuple(self.rng.choice(p) for p in self.pools), True)

    def pair(self):
        while True:
            a, b = self(), self()
            if a != b:
                return a, b


def level_perturbations(group, ring, a: int):
    """Characters g -> 1 + s_g w^a, s_g in k not all zero, that respect torsion."""
    F = ring.residue
    options = []
    for g in group.names:
        allowed = set(valid_values(group, ring, g, min_val=a))
        opts = []
        for s in F.elements():
            v = ring([F.one()] + [F.zero()] * (a - 1) + [s])
            if v in allowed:
                opts.append(v)
        options.append(opts)
    for vals in itertools.product(*options):
        if any(v != ring.one() for v in vals):
            yield make_unit_character(group, dict(zip(group.names, vals)))


def census_sweep(configs=CENSUS_CONFIGS, levels=(1, 2), windows=(1, 2), headroom=4,
                 backend="series") -> VerificationReport:
    """Lattice census for chi1 = chi2 * psi over every level-a perturbation psi.

    chi2 runs over the trivial character and u -> 1 + w; the precision is
    N = a + headroom.
    """
    report = VerificationReport("prop31")
    for p, ell, f in configs:
        group = standard_model(p, ell, f)
        F = FiniteFieldCtx(p)
        for a in levels:
            ring = make_dvr(F, a + headroom, backend)
            bases = [trivial_character(group, ring),
                     character_from_digits(group, ring, {"u": [1, 1]})]
            for chi2 in bases:
                for psi in level_perturbations(group, ring, a):
                    mod = diagonal_module(chi2 * psi, chi2)
                    for c in windows:
                        sub = verify_prop_class(mod, c)
                        report.bump("modules")
                        for w in sub.witnesses:
                            w.update(config=[p, ell ** f], level=a, window=c,
                                     chi1=repr(mod.chi1), chi2=repr(mod.chi2))
                        report = report.merge(sub)
    return report


def main2_sweep(params: LocalParams, search: SearchParams = SearchParams()) -> VerificationReport:
    """brute_force_correspond == correspond for sigma = 0 and a representative of every line."""
    report = VerificationReport("main2", seed=search.seed)
    if params.regime != "qplus1":
        raise InvalidInput("main2 sweep needs q = 1 mod p")
    sigmas = [ResidualHom.zero(params.group, params.field)]
    sigmas += [line.rep for line in tz_lines(params.group, params.field)]
    for sigma in sigmas:
        rho = one_plus_omega(params, sigma=sigma)
        engine, oracle = correspond(rho), brute_force_correspond(rho, search)
        report.bump("cases")
        if engine == oracle:
            report.bump("agreements")
        else:
            report.witnesses.append({"sigma": repr(sigma), "correspond": repr(engine),
                                     "brute_force": repr(oracle)})
    return report


def _check(report, key, ok, witness):
    report.bump(key + ".checked")
    if ok:
        report.bump(key + ".ok")
    else:
        report.witnesses.append(dict(witness, check=key))


def sigma_properties(rng: random.Random, n: int = 1000, N: int = 4) -> VerificationReport:
    """Antisymmetry and word-additivity of sigma on random pairs and words."""
    report = VerificationReport("sigma")
    samplers = []
    for p, ell, f in QPLUS1_CONFIGS:
        group = standard_model(p, ell, f)
        samplers.append(CharacterSampler(group, make_dvr(FiniteFieldCtx(p), N), rng))
    for i in range(n):
        S = samplers[i % len(samplers)]
        chi1, chi2 = S.pair()
        s = sigma_class(chi1, chi2)
        _check(report, "antisymmetry", sigma_class(chi2, chi1) == -s,
               {"chi1": repr(chi1), "chi2": repr(chi2)})
        orders = S.group.orders
        g = [rng.randrange(-5, 6) if n_ == 0 else rng.randrange(n_) for n_ in orders]
        h = [rng.randrange(-5, 6) if n_ == 0 else rng.randrange(n_) for n_ in orders]
        gh = S.group.multiply(g, h)
        a = min((x - y).valuation() for x, y in zip(chi1.values, chi2.values))
        direct = (chi1(gh) - chi2(gh)).divide_by_uniformizer_power(a).reduce()
        _check(report, "additivity", direct == s(g) + s(h) and s(gh) == direct,
               {"chi1": repr(chi1), "chi2": repr(chi2), "g": g, "h": h})
    return report


def compatibility_check(rng: random.Random, n: int = 200, N: int = 4) -> VerificationReport:
    """phi(sigma(chi1, chi2)) equals the T/Z restriction of the torus class."""
    report = VerificationReport("compatibility")
    for p, ell, f in QPLUS1_CONFIGS:
        group = standard_model(p, ell, f)
        S = CharacterSampler(group, make_dvr(FiniteFieldCtx(p), N), rng)
        for _ in range(n):
            chi1, chi2 = S.pair()
            lhs, rhs = phi(sigma_class(chi1, chi2)), restrict_to_TZ(t_side_class(chi1, chi2))
            _check(report, f"q{ell ** f}", lhs == rhs,
                   {"chi1": repr(chi1), "chi2": repr(chi2), "phi": repr(lhs), "t_side": repr(rhs)})
    return report


def random_twist(params: LocalParams, rng: random.Random) -> ResidualCharacter:
    F, group = params.field, params.group
    vals = []
    for n in group.orders:
        pool = [x for x in F.elements() if x and (n == 0 or x ** n == F.one())]
        vals.append(rng.choice(pool))
    return ResidualCharacter(group, tuple(vals))


def random_rep(params: LocalParams, rng: random.Random):
    twist = random_twist(params, rng)
    if params.regime == "qminus1":
        return one_plus_omega(params, case=rng.choice(list(QMinus1Case)), twist=twist)
    F = params.field
    vals = {g: rng.choice(list(F.elements())).code for g, n in params.group.generators
            if n == 0 or n % params.p == 0}
    return one_plus_omega(params, sigma=ResidualHom.from_dict(params.group, F, vals), twist=twist)


def twist_checks(rng: random.Random, n: int = 20) -> VerificationReport:
    """Twist equivariance, the |.|det involution, and socle discipline."""
    report = VerificationReport("twist")
    generic = {Variant.CUSPIDAL_GEN: "pi_gen", Variant.W_QM1: "pi_gen", Variant.V_QM1: "pi_gen"}
    for regime, configs in (("qplus1", QPLUS1_CONFIGS), ("qminus1", QMINUS1_CONFIGS)):
        for i in range(n):
            p, ell, f = configs[i % len(configs)]
            params = local_params(p, ell, f)
            rho, chi = random_rep(params, rng), random_twist(params, rng)
            lhs = correspond(twist_galois(rho, chi))
            rhs = twist_rep(correspond(rho), chi)
            _check(report, f"{regime}.equivariance", lhs == rhs,
                   {"rho": repr(rho), "chi": repr(chi), "lhs": repr(lhs), "rhs": repr(rhs)})
            d = correspond(rho)
            nrm = norm_character(params.group, params.field)
            _check(report, f"{regime}.involution", twist_rep(twist_rep(d, nrm), nrm) == d,
                   {"rho": repr(rho)})
            want = generic.get(d.variant, "St")
            _check(report, f"{regime}.socle", d.socle == want and d.socle in d.jh,
                   {"rho": repr(rho), "socle": d.socle})
    return report


def lift_consistency(params: LocalParams, search: SearchParams) -> VerificationReport:
    """Every lift's class line matches the engine output; unramified lifts agree."""
    report = VerificationReport("lifts")
    unram = unramified_line(params.group, params.field)
    for line in tz_lines(params.group, params.field):
        rho = one_plus_omega(params, sigma=line.rep)
        target = correspond(rho).class_line
        by_type = {}
        for lift in enumerate_lifts(rho, search):
            red = lift_reduction(lift)
            if red.class_line is not None:
                by_type.setdefault(lift.type_tag, set()).add(red.class_line)
                _check(report, "line", red.class_line == target,
                       {"sigma": repr(line.rep), "type": lift.type_tag})
        if line == unram:
            _check(report, "unramified_agreement",
                   by_type.get(1) == by_type.get(4) == by_type.get(2) == {unram},
                   {"types": sorted(by_type)})
        else:
            _check(report, "ramified_no_type14", 1 not in by_type and 4 not in by_type,
                   {"sigma": repr(line.rep), "types": sorted(by_type)})
    zero = one_plus_omega(params, sigma=ResidualHom.zero(params.group, params.field))
    lines = {lift_reduction(l).class_line for l in enumerate_lifts(zero, search)
             if l.type_tag == 2}
    _check(report, "zero_realizes_all_lines",
           lines == set(tz_lines(params.group, params.field)), {"found": len(lines)})
    return report


def dimension_checks() -> VerificationReport:
    report = VerificationReport("dimensions")
    for p, ell, f in QPLUS1_CONFIGS:
        group = standard_model(p, ell, f)
        _check(report, "hom_space", hom_space_dim(group) == 2, {"q": ell ** f})
        _check(report, "torus", hom_space_dim(torus_model(group)) == 4, {"q": ell ** f})
    return report


def selftest(seed: int = DEFAULT_SEED) -> VerificationReport:
    """Every invariant suite, seeded; a few seconds to a minute."""
    rng = random.Random(seed)
    report = VerificationReport("selftest", seed=seed)
    params = local_params(3, 7)
    search = SearchParams(seed=seed)
    parts = [
        dimension_checks(),
        sigma_properties(rng, 300),
        compatibility_check(rng, 50),
        twist_checks(rng),
        lift_consistency(params, search),
        main2_sweep(params, search),
        census_sweep(configs=((3, 7, 1), (3, 5, 1)), levels=(1,), windows=(1,)),
    ]
    for part in parts:
        for k, v in part.counts.items():
            report.bump(f"{part.kind}.{k}", v)
        report.witnesses.extend(dict(w, suite=part.kind) for w in part.witnesses)
    return report
