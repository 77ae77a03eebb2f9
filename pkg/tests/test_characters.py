import itertools
import random

import pytest

from gl2modp.characters import (AbelianGroupModel, ResidualCharacter, ResidualHom,
                                character_from_digits, congruence_level, hom_space_dim,
                                make_unit_character, norm_character, sigma_class,
                                standard_model, trivial_character)
from gl2modp.dvr import make_dvr
from gl2modp.errors import (Indistinguishable, InvalidInput, NotResiduallyTrivial,
                            TorsionViolation)
from gl2modp.field import FiniteFieldCtx
from gl2modp.verify import CharacterSampler

F3 = FiniteFieldCtx(3)
G7 = standard_model(3, 7)
O3 = make_dvr(F3, 3)


def ch(digits, ring=O3, group=G7):
    return character_from_digits(group, ring, digits)


def test_standard_model_shape():
    assert G7.generators == (("u", 0), ("t", 6))
    assert standard_model(3, 2, 2).generators == (("u", 0), ("t", 3))
    with pytest.raises(InvalidInput):
        standard_model(3, 3)


def test_unit_character_validation():
    assert ch({"u": [1, 1]}).trivial_mod_uniformizer
    assert ch({"t": [1, 1]}).trivial_mod_uniformizer          # (1+w)^6 = 1 at N = 3
    with pytest.raises(TorsionViolation):
        ch({"t": [1, 1]}, ring=make_dvr(F3, 4))                 # (1+w)^6 = 1 + 2w^3 at N = 4
    assert not ch({"u": [2]}).trivial_mod_uniformizer


def test_congruence_level_examples():
    triv = trivial_character(G7, O3)
    assert congruence_level(ch({"u": [1, 1]}), triv) == 1
    assert congruence_level(ch({"u": [1, 0, 1]}), triv) == 2
    with pytest.raises(Indistinguishable):
        congruence_level(triv, triv)
    with pytest.raises(NotResiduallyTrivial):
        congruence_level(ch({"u": [2]}), triv)


def test_sigma_examples():
    triv = trivial_character(G7, O3)
    assert sigma_class(ch({"u": [1, 1]}), triv).as_dict() == {"u": 1, "t": 0}
    assert sigma_class(ch({"u": [1, 1]}), ch({"t": [1, 1]})).as_dict() == {"u": 1, "t": 2}
    chi = ch({"u": [1, 0, 1], "t": [1, 0, 2]})
    assert congruence_level(chi, triv) == 2
    assert sigma_class(chi, triv).as_dict() == {"u": 1, "t": 2}


def _hom_count_oracle(group, F):
    """Count maps on generators that kill n * g for every torsion generator of order n."""
    count = 0
    for vals in itertools.product(list(F.elements()), repeat=len(group.generators)):
        if all(n == 0 or (F(n) * v).is_zero() for (_, n), v in zip(group.generators, vals)):
            count += 1
    return count


@pytest.mark.parametrize("p,ell,f,dim", [(3, 7, 1, 2), (3, 5, 1, 1), (5, 11, 1, 2), (3, 2, 2, 2),
                                         (5, 19, 1, 1), (5, 3, 1, 1)])
def test_hom_space_dim_against_enumeration(p, ell, f, dim):
    G = standard_model(p, ell, f)
    F = FiniteFieldCtx(p)
    assert hom_space_dim(G) == dim
    assert _hom_count_oracle(G, F) == p ** dim


def test_hom_space_dim_free_rank_one():
    assert hom_space_dim(AbelianGroupModel((("x", 0),), 3)) == 1


def test_residual_hom_torsion():
    G5 = standard_model(3, 5)
    with pytest.raises(TorsionViolation):
        ResidualHom.from_dict(G5, F3, {"t": 1})
    ResidualHom.from_dict(G7, F3, {"t": 1})


def _random_word(rng, group):
    return [rng.randrange(-3, 4) if n == 0 else rng.randrange(n) for n in group.orders]


@pytest.mark.parametrize("p,ell,f", [(3, 7, 1), (5, 11, 1), (3, 2, 2)])
def test_sigma_antisymmetry_and_additivity(p, ell, f):
    rng = random.Random(7)
    G = standard_model(p, ell, f)
    S = CharacterSampler(G, make_dvr(FiniteFieldCtx(p), 4), rng)
    for _ in range(150):
        chi1, chi2 = S.pair()
        s = sigma_class(chi1, chi2)
        assert sigma_class(chi2, chi1) == -s
        assert not s.is_zero()
        a = congruence_level(chi1, chi2)
        # additivity along a product of up to five random words
        words = [_random_word(rng, G) for _ in range(rng.randint(2, 5))]
        total = words[0]
        for w in words[1:]:
            total = G.multiply(total, w)
        direct = (chi1(total) - chi2(total)).divide_by_uniformizer_power(a).reduce()
        acc = s.field.zero()
        for w in words:
            acc = acc + s(w)
        assert direct == acc


def test_sigma_unchanged_by_rescaling():
    rng = random.Random(11)
    for p, ell in [(3, 7), (5, 11)]:
        G = standard_model(p, ell)
        R = make_dvr(FiniteFieldCtx(p), 4)
        S = CharacterSampler(G, R, rng)
        triv = trivial_character(G, R)
        for _ in range(100):
            chi1, chi2 = S.pair()
            assert sigma_class(chi1, chi2) == sigma_class(chi1 * chi2.inverse(), triv)


def test_residual_character_and_norm():
    G5 = standard_model(3, 5)
    n = norm_character(G5, F3)
    assert n.as_dict() == {"u": F3(2), "t": F3(1)}   # 5^{-1} = 2 mod 3
    assert (n * n).is_trivial()
    assert norm_character(G7, F3).is_trivial()
    with pytest.raises(InvalidInput):
        ResidualCharacter.from_dict(G7, F3, {"u": 0})


def test_make_unit_character_requires_every_generator():
    with pytest.raises(InvalidInput):
        make_unit_character(G7, {"u": O3.one()})
