"""The modified mod p local Langlands map for GL_2 and its sum-of-lifts oracle.

Residual representations are recorded at the granularity the answer depends
on:

* ``Generic``: the semisimplification is not a twist of 1 + omega-bar; the
  envelope of the generic representation is irreducible, so the answer is
  that irreducible representation (its supercuspidal support is an opaque
  label here).
* ``QMinus1``: q = -1 mod p and the semisimplification is a twist of
  1 + omega-bar; only which of the three extension shapes occurs matters.
* ``QPlus1``: q = 1 mod p and the semisimplification is a twist of the
  trivial representation; the extension class sigma in Hom(M, k) is kept
  (zero meaning the split case).

Smooth representations are symbolic: a variant tag plus twist label, with
Jordan-Holder multiset and socle derived from the tag.

When q = -1 mod p the norm character |.| (= omega-bar under reciprocity) is
quadratic and twisting by it permutes the shapes, so a twist label is only
defined up to |.|.  Both sides store the representative with the smaller
sort key and adjust the shape tag to match, which makes equality of
descriptions mean isomorphism.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from math import comb
from typing import Optional

from .characters import (CFT_NORMALIZATIONS, AbelianGroupModel, ResidualCharacter, ResidualHom,
                         UnitCharacter, cft_transport, norm_character,
                         residually_trivial_characters, sigma_class,
                         standard_model, valid_values)
from .dvr import BACKENDS, make_dvr
from .errors import (InsufficientEvidence, InvalidInput, SearchSpaceTooLarge,
                     UnsupportedCase)
from .ext import TZLine, phi, restrict_to_TZ, t_side_class, unramified_line
from .field import FiniteFieldCtx

DEFAULT_SEED = 20130901

ONE_G = "1_G"
ST = "St"
PI_GEN = "pi_gen"
NORM_DET = "|.|det"


@dataclass(frozen=True)
class LocalParams:
    """p, F/Q_ell with residue field of order q = ell^f, coefficient field k."""

    p: int
    ell: int
    f: int
    field: FiniteFieldCtx
    normalization: str = "uniformizer_to_u"

    def __post_init__(self):
        if self.field.p != self.p:
            raise InvalidInput(f"residue field has characteristic {self.field.p}, expected p={self.p}")
        if self.normalization not in CFT_NORMALIZATIONS:
            raise InvalidInput(f"unknown normalization {self.normalization!r}")
        standard_model(self.p, self.ell, self.f)

    @property
    def q(self) -> int:
        return self.ell ** self.f

    @property
    def group(self) -> AbelianGroupModel:
        return standard_model(self.p, self.ell, self.f)

    @property
    def regime(self) -> str:
        r = self.q % self.p
        if r == 1:
            return "qplus1"
        if r == self.p - 1:
            return "qminus1"
        return "other"

    def norm(self) -> ResidualCharacter:
        return norm_character(self.group, self.field)

    def trivial_twist(self) -> ResidualCharacter:
        return ResidualCharacter.trivial(self.group, self.field)


def local_params(p, ell, f=1, d=1, modulus=None, normalization="uniformizer_to_u"):
    return LocalParams(p, ell, f, FiniteFieldCtx(p, d, modulus), normalization)


class QMinus1Case(str, Enum):
    SPLIT = "split"
    EXT_1_BY_OMEGA = "ext_1_by_omega"    # sub omega-bar, quotient 1
    EXT_OMEGA_BY_1 = "ext_omega_by_1"    # sub 1, quotient omega-bar

    def swapped(self) -> "QMinus1Case":
        return {QMinus1Case.SPLIT: QMinus1Case.SPLIT,
                QMinus1Case.EXT_1_BY_OMEGA: QMinus1Case.EXT_OMEGA_BY_1,
                QMinus1Case.EXT_OMEGA_BY_1: QMinus1Case.EXT_1_BY_OMEGA}[self]


@dataclass(frozen=True)
class Generic:
    support: tuple


@dataclass(frozen=True)
class QMinus1:
    case: QMinus1Case


@dataclass(frozen=True)
class QPlus1:
    sigma: ResidualHom


def _canonical_mod_norm(label: ResidualCharacter, norm: ResidualCharacter):
    """(representative of label * <norm>, whether it differs from label)."""
    other = label * norm
    if other.sort_key() < label.sort_key():
        return other, True
    return label, False


@dataclass(frozen=True)
class ResidualGaloisRep:
    params: LocalParams
    twist: ResidualCharacter
    shape: object

    def __post_init__(self):
        P = self.params
        if self.twist.group != P.group or self.twist.field != P.field:
            raise InvalidInput("twist label lives on the wrong group or field")
        if isinstance(self.shape, QMinus1):
            if P.regime != "qminus1":
                raise InvalidInput(f"qminus1 shape needs q = -1 mod p (q={P.q}, p={P.p})")
            label, moved = _canonical_mod_norm(self.twist, P.norm())
            if moved:
                object.__setattr__(self, "twist", label)
                object.__setattr__(self, "shape", QMinus1(self.shape.case.swapped()))
        elif isinstance(self.shape, QPlus1):
            if P.regime != "qplus1":
                raise InvalidInput(f"qplus1 shape needs q = 1 mod p (q={P.q}, p={P.p})")
            if self.shape.sigma.group != P.group:
                raise InvalidInput("sigma lives on the wrong group")
        elif isinstance(self.shape, Generic):
            if len(self.shape.support) != 2:
                raise InvalidInput("generic shape needs a pair of support labels")
        else:
            raise InvalidInput(f"unknown shape {self.shape!r}")


def one_plus_omega(params: LocalParams, case=None, sigma=None, twist=None) -> ResidualGaloisRep:
    """A residual representation whose semisimplification is a twist of 1 + omega-bar.

    Dispatches on q mod p; q not congruent to +-1 is not covered.
    """
    twist = twist or params.trivial_twist()
    if params.regime == "qminus1":
        if sigma is not None:
            raise InvalidInput("sigma is only meaningful when q = 1 mod p")
        return ResidualGaloisRep(params, twist, QMinus1(QMinus1Case(case or "split")))
    if params.regime == "qplus1":
        if case is not None:
            raise InvalidInput("case is only meaningful when q = -1 mod p")
        if sigma is None:
            sigma = ResidualHom.zero(params.group, params.field)
        return ResidualGaloisRep(params, twist, QPlus1(sigma))
    raise UnsupportedCase(
        f"q = {params.q} is not +-1 mod p = {params.p}; this twist of 1 + omega-bar is not covered")


def twist_galois(rho: ResidualGaloisRep, chi: ResidualCharacter) -> ResidualGaloisRep:
    if isinstance(rho.shape, Generic):
        a, b = rho.shape.support
        tag = _twist_tag(chi)
        shape = Generic((f"{a}*{tag}", f"{b}*{tag}")) if not chi.is_trivial() else rho.shape
        return ResidualGaloisRep(rho.params, rho.twist * chi, shape)
    return ResidualGaloisRep(rho.params, rho.twist * chi, rho.shape)


def _twist_tag(chi: ResidualCharacter) -> str:
    return "chi[" + ",".join(f"{g}={v!r}" for g, v in chi.as_dict().items()) + "]"


# smooth side

class Variant(str, Enum):
    IRREDUCIBLE_GENERIC = "IrreducibleGeneric"
    CUSPIDAL_GEN = "CuspidalGen"
    STEINBERG = "Steinberg"
    ST_EXTENSION = "StExtension"
    UNIVERSAL_V_Q1 = "UniversalV_q1"
    W_QM1 = "W_qm1"
    V_QM1 = "V_qm1"


class WKind(str, Enum):
    WDUAL = "Wdual"               # W^v: socle pi_gen, top 1_G
    WDUAL_TWIST = "WdualTwist"    # W^v (x) |.|det: socle pi_gen, top |.|det

    def swapped(self) -> "WKind":
        return WKind.WDUAL_TWIST if self is WKind.WDUAL else WKind.WDUAL


QM1_VARIANTS = (Variant.CUSPIDAL_GEN, Variant.W_QM1, Variant.V_QM1)


@dataclass(frozen=True)
class SmoothRepDescription:
    variant: Variant
    twist: ResidualCharacter
    support: Optional[tuple] = None
    class_line: Optional[TZLine] = None
    kind: Optional[WKind] = None
    norm: Optional[ResidualCharacter] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        v = self.variant
        if (v is Variant.ST_EXTENSION) != (self.class_line is not None):
            raise InvalidInput("class_line is required exactly for StExtension")
        if (v is Variant.W_QM1) != (self.kind is not None):
            raise InvalidInput("kind is required exactly for W_qm1")
        if (v is Variant.IRREDUCIBLE_GENERIC) != (self.support is not None):
            raise InvalidInput("support is required exactly for IrreducibleGeneric")
        if v in QM1_VARIANTS:
            if self.norm is None:
                raise InvalidInput("q = -1 descriptions need the norm character")
            label, moved = _canonical_mod_norm(self.twist, self.norm)
            if moved:
                object.__setattr__(self, "twist", label)
                if self.kind is not None:
                    object.__setattr__(self, "kind", self.kind.swapped())

    @property
    def jh(self) -> tuple:
        return jh_constituents(self)

    @property
    def socle(self) -> str:
        v = self.variant
        if v is Variant.IRREDUCIBLE_GENERIC:
            return _support_label(self.support)
        if v in QM1_VARIANTS:
            return PI_GEN
        return ST

    @property
    def top(self) -> tuple:
        jh = list(self.jh)
        jh.remove(self.socle)
        return tuple(jh)

    def __repr__(self):
        extra = ""
        if self.class_line is not None:
            extra = f"{self.class_line.rep!r}"
        elif self.kind is not None:
            extra = f"{{{self.kind.value}}}"
        elif self.support is not None:
            extra = f"{{{self.support}}}"
        tw = "" if self.twist.is_trivial() else f" (x) {self.twist!r}det"
        return f"{self.variant.value}{extra}{tw}"


def _support_label(support):
    return f"pi({support[0]},{support[1]})"


def jh_constituents(desc: SmoothRepDescription) -> tuple:
    """Jordan-Holder multiset as a sorted tuple of labels."""
    v = desc.variant
    if v is Variant.IRREDUCIBLE_GENERIC:
        jh = [_support_label(desc.support)]
    elif v is Variant.CUSPIDAL_GEN:
        jh = [PI_GEN]
    elif v is Variant.STEINBERG:
        jh = [ST]
    elif v is Variant.ST_EXTENSION:
        jh = [ST, ONE_G]
    elif v is Variant.UNIVERSAL_V_Q1:
        jh = [ST, ONE_G, ONE_G]
    elif v is Variant.W_QM1:
        jh = [PI_GEN, ONE_G if desc.kind is WKind.WDUAL else NORM_DET]
    elif v is Variant.V_QM1:
        jh = [PI_GEN, ONE_G, NORM_DET]
    else:  # pragma: no cover
        raise InvalidInput(f"unknown variant {v}")
    return tuple(sorted(jh))


def _describe(params: LocalParams, variant, twist, **kw) -> SmoothRepDescription:
    norm = params.norm() if variant in QM1_VARIANTS else None
    return SmoothRepDescription(variant, twist, norm=norm, **kw)


def twist_rep(desc: SmoothRepDescription, chi: ResidualCharacter) -> SmoothRepDescription:
    """desc (x) (chi o det).

    For q = -1 each rep is stored with a canonical label mod |.|, so twisting
    by |.| swaps the two W kinds and fixes V and the cuspidal rep.
    """
    support = desc.support
    if support is not None and not chi.is_trivial():
        tag = _twist_tag(chi)
        support = (f"{support[0]}*{tag}", f"{support[1]}*{tag}")
    return SmoothRepDescription(desc.variant, desc.twist * chi, support, desc.class_line,
                                desc.kind, desc.norm)


def _rep_twist(params: LocalParams, chi: ResidualCharacter) -> ResidualCharacter:
    """Galois-side twist label -> character of F^x under the reciprocity normalization."""
    if params.normalization == "uniformizer_to_u":
        return chi
    vals = [v.inverse() if n == 0 else v for v, n in zip(chi.values, chi.group.orders)]
    return ResidualCharacter(chi.group, tuple(vals))


def correspond(rho: ResidualGaloisRep) -> SmoothRepDescription:
    P = rho.params
    twist = _rep_twist(P, rho.twist)
    shape = rho.shape
    if isinstance(shape, Generic):
        return _describe(P, Variant.IRREDUCIBLE_GENERIC, twist, support=shape.support)
    if isinstance(shape, QMinus1):
        if shape.case is QMinus1Case.SPLIT:
            return _describe(P, Variant.V_QM1, twist)
        kind = WKind.WDUAL_TWIST if shape.case is QMinus1Case.EXT_1_BY_OMEGA else WKind.WDUAL
        return _describe(P, Variant.W_QM1, twist, kind=kind)
    if shape.sigma.is_zero():
        return _describe(P, Variant.UNIVERSAL_V_Q1, twist)
    return _describe(P, Variant.ST_EXTENSION, twist, class_line=phi(shape.sigma, P.normalization))


# lifts

@dataclass(frozen=True)
class LiftDescription:
    params: LocalParams
    regime: str
    type_tag: int
    twist: ResidualCharacter
    chars: tuple = ()
    label: str = ""

    def __post_init__(self):
        if self.type_tag not in (1, 2, 3, 4):
            raise InvalidInput("lift types are numbered 1-4")
        if self.regime == "qplus1" and self.type_tag == 2:
            if len(self.chars) != 2 or self.chars[0] == self.chars[1]:
                raise InvalidInput("type-2 lifts need two distinct characters")
            if not all(c.trivial_mod_uniformizer for c in self.chars):
                raise InvalidInput("type-2 lifts need residually trivial characters")


@dataclass(frozen=True)
class SearchParams:
    precision: int = 3
    max_candidates: int = 100_000
    mode: str = "full"
    seed: int = DEFAULT_SEED
    backend: str = "series"

    def __post_init__(self):
        if self.mode not in ("full", "sampled"):
            raise InvalidInput(f"search mode must be full or sampled, got {self.mode!r}")
        if self.backend not in BACKENDS:
            raise InvalidInput(f"unknown backend {self.backend!r}")
        if self.precision < 2:
            raise InvalidInput("search precision must be >= 2")
        if self.max_candidates < 1:
            raise InvalidInput("max_candidates must be positive")


def lift_reduction(lift: LiftDescription) -> SmoothRepDescription:
    """Reduction of the distinguished lattice in pi(rho) for one lift rho."""
    P, t = lift.params, _rep_twist(lift.params, lift.twist)
    if lift.regime == "qminus1":
        if lift.type_tag == 1:
            return _describe(P, Variant.CUSPIDAL_GEN, t)
        if lift.type_tag == 2:
            return _describe(P, Variant.W_QM1, t, kind=WKind.WDUAL_TWIST)
        if lift.type_tag == 3:
            return _describe(P, Variant.W_QM1, t, kind=WKind.WDUAL)
        return _describe(P, Variant.V_QM1, t)
    if lift.type_tag in (1, 4):
        # Iwahori-spherical: the torus acts through T/Z = F^x -> Z
        return _describe(P, Variant.ST_EXTENSION, t, class_line=unramified_line(P.group, P.field))
    if lift.type_tag == 3:
        return _describe(P, Variant.STEINBERG, t)
    chi1, chi2 = (cft_transport(c, P.normalization) for c in lift.chars)
    return _describe(P, Variant.ST_EXTENSION, t, class_line=restrict_to_TZ(t_side_class(chi1, chi2)))


QM1_LIFT_TYPES = {
    QMinus1Case.SPLIT: (1, 2, 3, 4),
    QMinus1Case.EXT_1_BY_OMEGA: (1, 2),
    QMinus1Case.EXT_OMEGA_BY_1: (1, 3),
}


def _candidate_pairs(P: LocalParams, search: SearchParams):
    ring = make_dvr(P.field, search.precision, search.backend)
    G = P.group
    if search.mode == "full":
        sizes = [len(valid_values(G, ring, g)) for g in G.names]
        n = 1
        for s in sizes:
            n *= s
        if comb(n, 2) > search.max_candidates:
            raise SearchSpaceTooLarge(
                f"{comb(n, 2)} character pairs exceed max_candidates={search.max_candidates}")
        chars = list(residually_trivial_characters(G, ring))
        for i in range(len(chars)):
            for j in range(i + 1, len(chars)):
                yield chars[i], chars[j]
        return
    rng = random.Random(search.seed)
    pools = [valid_values(G, ring, g) for g in G.names]
    produced = 0
    while produced < search.max_candidates:
        a = tuple(rng.choice(pool) for pool in pools)
        b = tuple(rng.choice(pool) for pool in pools)
        if a == b:
            continue
        produced += 1
        yield UnitCharacter(G, a, True), UnitCharacter(G, b, True)


def enumerate_lifts(rho: ResidualGaloisRep, search: SearchParams = SearchParams()):
    P = rho.params
    shape = rho.shape
    if isinstance(shape, QMinus1):
        return [LiftDescription(P, "qminus1", t, rho.twist) for t in QM1_LIFT_TYPES[shape.case]]
    if not isinstance(shape, QPlus1):
        raise InvalidInput("lift enumeration needs a q = +-1 residual representation")
    sigma = shape.sigma
    target = None if sigma.is_zero() else sigma.normalized()
    unram = unramified_line(P.group, P.field).rep
    lifts = [LiftDescription(P, "qplus1", 3, rho.twist, label="nonsplit ext of chi by omega chi")]
    if target is None or target == unram:
        lifts.append(LiftDescription(P, "qplus1", 1, rho.twist, label="chi + chi (scalar)"))
        lifts.append(LiftDescription(P, "qplus1", 4, rho.twist, label="unramified ext of chi by chi"))
    for chi1, chi2 in _candidate_pairs(P, search):
        if target is None or sigma_class(chi1, chi2).normalized() == target:
            lifts.append(LiftDescription(P, "qplus1", 2, rho.twist, chars=(chi1, chi2)))
    return lifts


def span_dimension(reps, F: FiniteFieldCtx) -> int:
    """Rank over F of a list of ResidualHoms (Gaussian elimination)."""
    rows = [list(r.values) for r in reps]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [x - c * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


_QM1_TOPS = {
    Variant.CUSPIDAL_GEN: frozenset(),
    WKind.WDUAL: frozenset({ONE_G}),
    WKind.WDUAL_TWIST: frozenset({NORM_DET}),
    Variant.V_QM1: frozenset({ONE_G, NORM_DET}),
}


def brute_force_correspond(rho: ResidualGaloisRep, search: SearchParams = SearchParams()):
    """Sum of the reductions of all lifts, inside the envelope."""
    P = rho.params
    twist = _rep_twist(P, rho.twist)
    if isinstance(rho.shape, Generic):
        return _describe(P, Variant.IRREDUCIBLE_GENERIC, twist, support=rho.shape.support)
    reductions = [lift_reduction(l) for l in enumerate_lifts(rho, search)]
    if isinstance(rho.shape, QMinus1):
        # submodules of V containing pi_gen <-> subsets of its top {1_G, |.|det}
        top = frozenset()
        for d in reductions:
            top |= _QM1_TOPS[d.kind if d.variant is Variant.W_QM1 else d.variant]
        if top == _QM1_TOPS[Variant.V_QM1]:
            return _describe(P, Variant.V_QM1, twist)
        if not top:
            return _describe(P, Variant.CUSPIDAL_GEN, twist)
        (label,) = top
        kind = WKind.WDUAL if label == ONE_G else WKind.WDUAL_TWIST
        return _describe(P, Variant.W_QM1, twist, kind=kind)
    lines = {d.class_line for d in reductions if d.variant is Variant.ST_EXTENSION}
    dim = span_dimension([l.rep for l in lines], P.field)
    if dim >= 2:
        return _describe(P, Variant.UNIVERSAL_V_Q1, twist)
    if dim == 1:
        (line,) = lines
        return _describe(P, Variant.ST_EXTENSION, twist, class_line=line)
    raise InsufficientEvidence("only Steinberg reductions found; enlarge the search")
