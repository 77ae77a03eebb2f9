import random

import pytest

from gl2modp.characters import (ResidualHom, character_from_digits, hom_space_dim,
                                sigma_class, standard_model, trivial_character)
from gl2modp.dvr import make_dvr
from gl2modp.errors import GroupMismatch, NotCenterTrivial, ZeroClass
from gl2modp.ext import (TorusHom, TZLine, line_eq, phi, restrict_to_TZ, t_side_class,
                         torus_model, tz_lines, unramified_line)
from gl2modp.field import FiniteFieldCtx
from gl2modp.verify import CharacterSampler

F3 = FiniteFieldCtx(3)
G7 = standard_model(3, 7)
O3 = make_dvr(F3, 3)


def hom(**vals):
    return ResidualHom.from_dict(G7, F3, vals)


def test_phi_examples():
    assert phi(hom(u=1, t=0)).as_dict() == {"u": 1, "t": 0}
    assert phi(hom(u=0, t=2)).as_dict() == {"u": 0, "t": 1}
    with pytest.raises(ZeroClass):
        phi(hom())


def test_phi_inverse_normalization_keeps_lines_apart():
    lines = tz_lines(G7, F3)
    images = {phi(l.rep, "uniformizer_to_u_inverse") for l in lines}
    assert len(images) == len(lines) == 4
    assert phi(hom(u=1, t=1), "uniformizer_to_u_inverse").as_dict() == {"u": 1, "t": 2}


def test_t_side_class_examples():
    chi1 = character_from_digits(G7, O3, {"u": [1, 1]})
    triv = trivial_character(G7, O3)
    h = t_side_class(chi1, triv)
    assert h.first.as_dict() == {"u": 1, "t": 0}
    assert h.second.as_dict() == {"u": 2, "t": 0}
    assert t_side_class(triv, chi1) == -h
    deeper = character_from_digits(G7, O3, {"u": [1, 0, 1]})
    assert restrict_to_TZ(t_side_class(deeper, triv)) == restrict_to_TZ(h)


def test_restrict_errors():
    with pytest.raises(NotCenterTrivial):
        restrict_to_TZ(TorusHom(hom(u=1), hom(u=1)))
    with pytest.raises(ZeroClass):
        restrict_to_TZ(TorusHom(hom(), hom()))
    assert restrict_to_TZ(TorusHom(hom(u=1), hom(u=2))).as_dict() == {"u": 1, "t": 0}


def test_line_eq():
    assert line_eq(TZLine(hom(u=1, t=2)), TZLine(hom(u=2, t=1)))
    assert not line_eq(TZLine(hom(u=1)), TZLine(hom(t=1)))
    assert line_eq(TZLine(hom(u=1, t=1)), TZLine(hom(u=1, t=1)))
    G5 = standard_model(3, 5)
    with pytest.raises(GroupMismatch):
        line_eq(TZLine(hom(u=1)), TZLine(ResidualHom.from_dict(G5, F3, {"u": 1})))


def test_dimensions():
    assert hom_space_dim(G7) == 2 and hom_space_dim(torus_model(G7)) == 4
    assert TorusHom(hom(u=1), hom(u=2)).ambient_dim() == 4
    assert TZLine(hom(u=1)).ambient_dim() == 2
    # a 2-dimensional space over F_3 has (3^2 - 1) / 2 = 4 lines
    assert len(tz_lines(G7, F3)) == 4
    assert len(tz_lines(standard_model(3, 5), F3)) == 1


def test_unramified_line():
    assert unramified_line(G7, F3).as_dict() == {"u": 1, "t": 0}


@pytest.mark.parametrize("p,ell,f", [(3, 7, 1), (5, 11, 1), (3, 2, 2)])
def test_compatibility_and_center_vanishing(p, ell, f):
    rng = random.Random(5)
    G = standard_model(p, ell, f)
    S = CharacterSampler(G, make_dvr(FiniteFieldCtx(p), 4), rng)
    for _ in range(100):
        chi1, chi2 = S.pair()
        h = t_side_class(chi1, chi2)
        assert h.on_center().is_zero()
        assert line_eq(phi(sigma_class(chi1, chi2)), restrict_to_TZ(h))
