"""Ext^1 of torus characters and the comparison map phi.

Ext^1_T(1_T, 1_T) is modelled as Hom(T, k) with T = M x M (the diagonal
torus, diag(x, y) <-> (x, y)); a class is a pair of ResidualHoms giving its
values on diag(x, 1) and diag(1, x).  The centre Z = {diag(x, x)} acts
trivially exactly when the two components sum to zero, and the centre-trivial
part is identified with Hom(T/Z, k) = Hom(M, k) through x -> diag(x, 1).

phi: Hom(W_F^ab, k) -> Hom(T/Z, k) is the identity in generator coordinates
once the reciprocity normalization is fixed (uniformizer of F <-> u by
default).  Everything downstream compares lines, so the scalar ambiguity in
phi never matters.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .characters import (AbelianGroupModel, ResidualHom, UnitCharacter,
                         _same_group, cft_transport_hom, hom_space_dim,
                         make_unit_character, sigma_class)
from .errors import GroupMismatch, NotCenterTrivial, ZeroClass


@dataclass(frozen=True)
class TorusHom:
    first: ResidualHom
    second: ResidualHom

    def __post_init__(self):
        _same_group(self.first.group, self.second.group)

    @property
    def group(self):
        return self.first.group

    def ambient_dim(self) -> int:
        return 2 * hom_space_dim(self.group)

    def on_center(self) -> ResidualHom:
        return self.first + self.second

    def __neg__(self):
        return TorusHom(-self.first, -self.second)


@dataclass(frozen=True)
class TZLine:
    """A line in Hom(T/Z, k), stored by its normalized representative."""

    rep: ResidualHom

    def __post_init__(self):
        if self.rep.is_zero():
            raise ZeroClass("a line needs a nonzero representative")
        object.__setattr__(self, "rep", self.rep.normalized())

    @property
    def group(self):
        return self.rep.group

    def ambient_dim(self) -> int:
        return hom_space_dim(self.group)

    def as_dict(self):
        return self.rep.as_dict()

    def __repr__(self):
        return f"TZLine{self.rep!r}"


def unramified_line(group: AbelianGroupModel, field) -> TZLine:
    """The line of the class that factors through T/Z = F^x -> Z (valuation)."""
    vals = tuple(field.one() if n == 0 else field.zero() for n in group.orders)
    return TZLine(ResidualHom(group, vals))


def phi(sigma: ResidualHom, normalization: str = "uniformizer_to_u") -> TZLine:
    """Transport a Galois-side class to a line in Hom(T/Z, k)."""
    if sigma.is_zero():
        raise ZeroClass("phi is only taken of nonzero classes")
    return TZLine(cft_transport_hom(sigma, normalization))


def torus_model(group: AbelianGroupModel) -> AbelianGroupModel:
    gens = tuple((f"{g}_1", n) for g, n in group.generators) + tuple(
        (f"{g}_2", n) for g, n in group.generators)
    return AbelianGroupModel(gens, group.p, group.provenance)


def torus_character(chi_a: UnitCharacter, chi_b: UnitCharacter) -> UnitCharacter:
    """diag(x, y) -> chi_a(x) chi_b(y) as a character of the torus model."""
    _same_group(chi_a.group, chi_b.group)
    return make_unit_character(torus_model(chi_a.group), chi_a.values + chi_b.values)


def t_side_class(chi1: UnitCharacter, chi2: UnitCharacter) -> TorusHom:
    """sigma(chi1 x chi2, chi2 x chi1), split into its diag(x,1) and diag(1,x) parts."""
    s = sigma_class(torus_character(chi1, chi2), torus_character(chi2, chi1))
    n = len(chi1.group.generators)
    return TorusHom(ResidualHom(chi1.group, s.values[:n]), ResidualHom(chi1.group, s.values[n:]))


def restrict_to_TZ(h: TorusHom) -> TZLine:
    if not h.on_center().is_zero():
        raise NotCenterTrivial(f"centre acts by {h.on_center()!r}")
    if h.first.is_zero():
        raise ZeroClass("class vanishes on T/Z")
    return TZLine(h.first)


def line_eq(l1: TZLine, l2: TZLine) -> bool:
    if l1.group != l2.group:
        raise GroupMismatch("lines in different Hom spaces")
    return l1.rep == l2.rep


def tz_lines(group: AbelianGroupModel, field):
    """Every line of Hom(T/Z, k), as normalized representatives in sorted order."""
    free = [i for i, n in enumerate(group.orders) if n == 0 or n % group.p == 0]
    out = []
    for vals in itertools.product(field.elements(), repeat=len(free)):
        full = [field.zero()] * len(group.generators)
        for i, v in zip(free, vals):
            full[i] = v
        h = ResidualHom(group, tuple(full))
        if not h.is_zero() and h.normalized() == h:
            out.append(TZLine(h))
    return out
