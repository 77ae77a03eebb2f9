"""Rank-2 lattices stable under a diagonal action chi1 + chi2.

A lattice is stored by its triangular basis

    v1 = w^r e1,    v2 = off e1 + w^s e2,

with ``off`` reduced modulo w^r.  The canonical representative of a homothety
class has r, s >= 0 and min(r, s, val(off)) = 0, i.e. it lies in the standard
lattice L0 = <e1, e2> but not in w L0; then L0 / L' is cyclic of order r + s,
and r + s is the distance from L0 in the Bruhat-Tits tree.  A class fits the
window c (some representative satisfies w^c L0 <= L' <= w^-c L0) iff
r + s <= 2c.

The extension class of L'/wL' is computed along two independent routes:
``reduction_extension_direct`` reduces the action matrices and reads off the
cocycle, ``sigma_from_lattice_proof_formula`` follows the e1, e3, b, alpha
recipe.  ``verify_prop_class`` checks both against sigma(chi1, chi2).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

from .characters import (ResidualHom, UnitCharacter, congruence_level,
                         sigma_class)
from .dvr import DVRCtx, DVRElem, FracElem
from .errors import (GL2Error, InsufficientPrecision, InvalidInput, NotStable,
                     PrecisionBudgetExceeded, SplitReduction)
from .field import FFElem
from .report import VerificationReport


@dataclass(frozen=True)
class DiagonalActionModule:
    """O^2 with g e1 = chi1(g) e1 and g e2 = chi2(g) e2."""

    chi1: UnitCharacter
    chi2: UnitCharacter
    level: int

    @property
    def ring(self) -> DVRCtx:
        return self.chi1.ring

    @property
    def group(self):
        return self.chi1.group


def diagonal_module(chi1: UnitCharacter, chi2: UnitCharacter) -> DiagonalActionModule:
    return DiagonalActionModule(chi1, chi2, congruence_level(chi1, chi2))


def required_precision(window: int) -> int:
    """Smallest N certifying every test for lattices within the window."""
    return 2 * window + 1


def check_budget(ring: DVRCtx, window: int):
    if window < 0:
        raise InvalidInput("window must be >= 0")
    if ring.N < required_precision(window):
        raise PrecisionBudgetExceeded(
            f"window {window} needs precision >= {required_precision(window)}, have N={ring.N}")


@dataclass(frozen=True, eq=False)
class LatticeBasis:
    """span(w^r e1, off e1 + w^s e2); ``off`` is a FracElem."""

    r: int
    s: int
    off: FracElem
    window: int

    @property
    def ring(self) -> DVRCtx:
        return self.off.ctx

    def vectors(self):
        ctx = self.ring
        zero = FracElem.exact_zero(ctx)
        return ((FracElem.uniformizer_power(ctx, self.r), zero),
                (self.off, FracElem.uniformizer_power(ctx, self.s)))

    def coordinates(self, x: FracElem, y: FracElem):
        """Coordinates (alpha, beta) with (x, y) = alpha v1 + beta v2."""
        beta = y.shift(-self.s)
        alpha = (x - beta * self.off).shift(-self.r)
        return alpha, beta

    def scaled(self, m: int) -> "LatticeBasis":
        """The homothetic lattice w^m L'."""
        return LatticeBasis(self.r + m, self.s + m, self.off.shift(m), self.window)

    def canonical(self) -> "LatticeBasis":
        off = _reduce_mod_power(self.off, self.r)
        v = off.valuation()
        m = min(self.r, self.s, math.inf if v is None else v)
        off = off.shift(-m)
        r, s = self.r - m, self.s - m
        return LatticeBasis(r, s, off, max(self.window, (r + s + 1) // 2))

    @property
    def distance(self) -> int:
        c = self.canonical()
        return c.r + c.s

    def off_digits(self):
        """Digit codes of off at w^0 .. w^(r-1) (canonical bases only)."""
        if self.off.is_zero():
            return (0,) * self.r
        codes = self.ring._codes(self.off.to_dvr().raw)
        return tuple(codes[: self.r])

    def key(self):
        c = self.canonical()
        return (c.r, c.s, c.off_digits())

    def __eq__(self, other):
        return isinstance(other, LatticeBasis) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"LatticeBasis(r={self.r}, s={self.s}, off={self.off!r})"


def _reduce_mod_power(x: FracElem, r: int) -> FracElem:
    """x modulo w^r O, keeping the digits below w^r."""
    if x.is_zero() or x.exp >= r:
        return FracElem.exact_zero(x.ctx)
    need = r - x.exp
    if x.mant.certified < need:
        raise InsufficientPrecision("off-diagonal entry is not certified below w^r")
    if need >= x.ctx.N:
        raise PrecisionBudgetExceeded("off-diagonal entry needs more than N digits")
    m = x.mant.truncate(need)
    return FracElem.from_dvr(x.ctx(m.coeffs), x.exp)


def lattice_from_vectors(v1, v2, window: Optional[int] = None) -> LatticeBasis:
    """Canonical basis of span(v1, v2); vectors are pairs of FracElem (e1, e2 coordinates)."""
    (x1, y1), (x2, y2) = v1, v2
    if y1.is_zero() and y2.is_zero():
        raise InvalidInput("vectors do not span a lattice")
    # pivot: smallest e2-valuation
    if y1.is_zero() or (not y2.is_zero() and y2.exp < y1.exp):
        (x1, y1), (x2, y2) = (x2, y2), (x1, y1)
    ratio = y2 * y1.inverse()
    xu = x2 - ratio * x1
    if xu.is_zero():
        raise InvalidInput("vectors do not span a lattice")
    r = xu.exp
    s = y1.exp
    off = x1 * y1.inverse().shift(s)
    L = LatticeBasis(r, s, off, 0).canonical()
    if window is not None:
        L = LatticeBasis(L.r, L.s, L.off, window)
    return L


def lattice(ring: DVRCtx, r: int, s: int, off_digits=(), off_exp: int = 0, window=None) -> LatticeBasis:
    """Convenience constructor: off = w^off_exp * sum(off_digits[i] w^i)."""
    off = FracElem.from_dvr(ring(list(off_digits)), off_exp) if any(
        ring._code(d) for d in off_digits) else FracElem.exact_zero(ring)
    L = LatticeBasis(r, s, off, 0).canonical()
    return LatticeBasis(L.r, L.s, L.off, L.window if window is None else window)


def standard_lattice(ring: DVRCtx) -> LatticeBasis:
    return lattice(ring, 0, 0)


# action on coordinates

def _frac(x: DVRElem) -> FracElem:
    return FracElem.from_dvr(x)


def action_matrix(L: LatticeBasis, mod: DiagonalActionModule, g: str):
    """2x2 matrix [[a11, a12], [a21, a22]] of g in the basis (v1, v2); columns are images."""
    c1, c2 = _frac(mod.chi1(g)), _frac(mod.chi2(g))
    cols = []
    for x, y in L.vectors():
        cols.append(L.coordinates(c1 * x, c2 * y))
    (a11, a21), (a12, a22) = cols
    return [[a11, a12], [a21, a22]]


def is_stable(L: LatticeBasis, mod: DiagonalActionModule) -> bool:
    check_budget(mod.ring, L.window)
    try:
        for g in mod.group.names:
            for row in action_matrix(L, mod, g):
                for entry in row:
                    if not entry.is_integral():
                        return False
    except InsufficientPrecision as exc:
        raise PrecisionBudgetExceeded(str(exc)) from exc
    return True


def enumerate_stable_lattices(mod: DiagonalActionModule, c: int):
    """All stable homothety classes at tree distance <= 2c, sorted by (r, s, off digits)."""
    check_budget(mod.ring, c)
    return [L for L in enumerate_window(mod.ring, c) if is_stable(L, mod)]


def enumerate_window(ring: DVRCtx, c: int):
    """Canonical representatives of all classes in the window, sorted."""
    k = ring.residue.order
    out = []
    for r in range(2 * c + 1):
        for s in range(2 * c + 1 - r):
            for digits in itertools.product(range(k), repeat=r):
                nonzero = [i for i, d in enumerate(digits) if d]
                v = nonzero[0] if nonzero else math.inf
                if min(r, s, v) != 0:
                    continue
                off = (FracElem.from_dvr(ring(list(digits))) if nonzero
                       else FracElem.exact_zero(ring))
                out.append(LatticeBasis(r, s, off, c))
    return out


@dataclass(frozen=True)
class ReductionExtension:
    """Split, or Nonsplit with a normalized class line in Hom(M, k)."""

    class_line: Optional[ResidualHom] = None

    @property
    def split(self) -> bool:
        return self.class_line is None

    def __repr__(self):
        return "Split" if self.split else f"Nonsplit({self.class_line!r})"


SPLIT = ReductionExtension()


def _reduced(entry: FracElem) -> FFElem:
    try:
        return entry.reduce()
    except InsufficientPrecision as exc:
        raise PrecisionBudgetExceeded(str(exc)) from exc


def _kernel_vector(rows, F):
    """A nonzero kernel vector of a rank-1 list of 2-component rows over F."""
    for a, b in rows:
        if a or b:
            return (-b, a)
    return None


def reduction_extension_direct(L: LatticeBasis, mod: DiagonalActionModule) -> ReductionExtension:
    """Extension class of L'/wL' from the reduced action matrices alone."""
    if not is_stable(L, mod):
        raise NotStable(f"{L!r} is not stable")
    F = mod.ring.residue
    one = F.one()
    mats = {}
    for g in mod.group.names:
        m = action_matrix(L, mod, g)
        mats[g] = [[_reduced(m[i][j]) - (one if i == j else 0) for j in range(2)] for i in range(2)]
    rows = [tuple(row) for g in mod.group.names for row in mats[g]]
    if all(not a and not b for a, b in rows):
        return SPLIT
    # common fixed line = kernel of the stacked (M_g - 1)
    w = _kernel_vector(rows, F)
    for a, b in rows:
        if a * w[0] + b * w[1]:
            raise GL2Error("reduced action has no invariant line")
    w2 = (F.one(), F.zero()) if w[1] else (F.zero(), F.one())
    det = w[0] * w2[1] - w[1] * w2[0]
    sigma = []
    for g in mod.group.names:
        A = mats[g]
        img = (A[0][0] * w2[0] + A[0][1] * w2[1], A[1][0] * w2[0] + A[1][1] * w2[1])
        # img = sigma_g * w  (+ 0 * w2)
        coef_w = (img[0] * w2[1] - img[1] * w2[0]) / det
        coef_w2 = (w[0] * img[1] - w[1] * img[0]) / det
        if coef_w2:
            raise GL2Error("reduced action is not unipotent")
        sigma.append(coef_w)
    cls = ResidualHom(mod.group, tuple(sigma))
    if cls.is_zero():
        return SPLIT
    return ReductionExtension(cls.normalized())


def sigma_from_lattice_proof_formula(L: LatticeBasis, mod: DiagonalActionModule):
    """Class line via the b, alpha recipe.

    Returns (ReductionExtension, details) where details records the
    homothety shift, whether e1/e2 were swapped, b and alpha.
    """
    if not is_stable(L, mod):
        raise NotStable(f"{L!r} is not stable")
    ctx = mod.ring
    try:
        return _proof_formula(L, mod, ctx)
    except InsufficientPrecision as exc:
        raise PrecisionBudgetExceeded(str(exc)) from exc


def _proof_formula(L, mod, ctx):
    one, zero = FracElem.uniformizer_power(ctx, 0), FracElem.exact_zero(ctx)
    # coordinates of e1, e2 in the basis of L'
    ce1 = L.coordinates(one, zero)
    ce2 = L.coordinates(zero, one)
    vals = [x.exp for x in ce1 + ce2 if not x.is_zero()]
    mu = min(vals)
    # L' <- w^mu L' gives L0 <= L', L0 not in w L'; coordinates scale by w^-mu
    Ls = L.scaled(mu)
    ce1 = tuple(x.shift(-mu) for x in ce1)
    ce2 = tuple(x.shift(-mu) for x in ce2)

    def in_wL(c):
        for x in c:
            if x.is_zero() and x.exp < 1:
                raise InsufficientPrecision("membership in w L' is not certified")
        return all(x.exp >= 1 for x in c)

    swapped = in_wL(ce1)
    if swapped:
        c, psi1, psi2, lead = ce2, mod.chi2, mod.chi1, 1
    else:
        c, psi1, psi2, lead = ce1, mod.chi1, mod.chi2, 0
    # complete the image of e_lead to a basis (e_lead, e3) of L'
    wcoord = (0, 1) if (not c[0].is_zero() and c[0].exp == 0) else (1, 0)
    v1, v2 = Ls.vectors()
    e3 = v2 if wcoord == (0, 1) else v1
    nz = [x.exp for x in e3 if not x.is_zero()]
    b = max(1, -min(nz))
    alpha = e3[lead].shift(b)
    sigma = []
    for g in mod.group.names:
        diff = _frac(psi1(g) - psi2(g))
        entry = (alpha * diff).shift(-b)
        if not entry.is_integral():
            raise NotStable("off-diagonal coefficient is not integral")
        sigma.append(entry.reduce())
    cls = ResidualHom(mod.group, tuple(sigma))
    details = {"shift": mu, "swapped": swapped, "b": b, "alpha": alpha}
    if cls.is_zero():
        raise SplitReduction(f"{L!r} has split reduction")
    return ReductionExtension(cls.normalized()), details


def verify_prop_class(mod: DiagonalActionModule, c: int) -> VerificationReport:
    """Census of the window; every nonsplit class line must equal span(sigma)."""
    report = VerificationReport("prop31")
    expected = sigma_class(mod.chi1, mod.chi2).normalized()
    for key in ("stable", "split", "nonsplit", "matches"):
        report.counts[key] = 0
    for L in enumerate_stable_lattices(mod, c):
        report.bump("stable")
        direct = reduction_extension_direct(L, mod)
        if direct.split:
            report.bump("split")
            continue
        report.bump("nonsplit")
        formula, _ = sigma_from_lattice_proof_formula(L, mod)
        if direct.class_line == expected and formula.class_line == expected:
            report.bump("matches")
        else:
            report.witnesses.append({
                "lattice": {"r": L.r, "s": L.s, "off": list(L.off_digits())},
                "direct": repr(direct), "formula": repr(formula), "sigma": repr(expected),
            })
    return report
