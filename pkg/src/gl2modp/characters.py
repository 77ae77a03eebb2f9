"""Characters of the finite-level model of F^x and the cocycle sigma(chi1, chi2).

The standard model of F^x (equivalently W_F^ab via local class field theory)
has two generators: ``u``, the class of a uniformizer of F, of infinite order,
and ``t``, a generator of the tame units (the Teichmuller lift of F_q^x), of
order q - 1.  The wild units 1 + p_F are pro-l with l != p, so every
character valued in the pro-p group 1 + wO kills them; dropping them loses
nothing for the characters considered here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .dvr import DVRCtx, DVRElem
from .errors import (GroupMismatch, Indistinguishable, InvalidInput,
                     NotResiduallyTrivial, TorsionViolation)
from .field import FFElem, FiniteFieldCtx, is_prime

CFT_NORMALIZATIONS = ("uniformizer_to_u", "uniformizer_to_u_inverse")


@dataclass(frozen=True)
class AbelianGroupModel:
    """Finitely generated abelian group  Z^r x prod Z/n_i  given by generators.

    ``generators`` is a tuple of (name, order) with order 0 meaning infinite.
    ``p`` is the characteristic of the coefficient field k; it is part of the
    model because it decides which torsion directions survive in Hom(M, k).
    """

    generators: tuple
    p: int
    provenance: Optional[tuple] = None

    def __post_init__(self):
        names = [g for g, _ in self.generators]
        if len(set(names)) != len(names):
            raise InvalidInput(f"duplicate generator names {names}")
        if any(n < 0 for _, n in self.generators):
            raise InvalidInput("generator orders must be >= 0")

    @property
    def names(self):
        return tuple(g for g, _ in self.generators)

    @property
    def orders(self):
        return tuple(n for _, n in self.generators)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InvalidInput(f"unknown generator {name!r}") from None

    @property
    def q(self):
        return None if self.provenance is None else self.provenance[2]

    def element(self, exponents) -> tuple:
        """Normal form of a group element given by an exponent vector or dict."""
        if isinstance(exponents, dict):
            vec = [0] * len(self.generators)
            for name, e in exponents.items():
                vec[self.index(name)] = e
            exponents = vec
        if len(exponents) != len(self.generators):
            raise InvalidInput("exponent vector has the wrong length")
        return tuple(e % n if n else e for e, n in zip(exponents, self.orders))

    def multiply(self, x, y) -> tuple:
        return self.element([a + b for a, b in zip(x, y)])


def standard_model(p: int, ell: int, f: int = 1) -> AbelianGroupModel:
    """The model <u> x <t> of F^x for F/Q_ell with residue field of order ell^f."""
    if not is_prime(ell):
        raise InvalidInput(f"ell must be prime, got {ell}")
    if ell == p:
        raise InvalidInput("ell must differ from p")
    if f < 1:
        raise InvalidInput("f must be >= 1")
    q = ell ** f
    return AbelianGroupModel((("u", 0), ("t", q - 1)), p, (ell, f, q))


def hom_space_dim(group: AbelianGroupModel) -> int:
    """dim_k Hom(M, k): free generators plus torsion generators of order divisible by p."""
    return sum(1 for n in group.orders if n == 0 or n % group.p == 0)


@dataclass(frozen=True, eq=False)
class UnitCharacter:
    """A character M -> O_N^x, stored by its values on the generators."""

    group: AbelianGroupModel
    values: tuple
    trivial_mod_uniformizer: bool

    @property
    def ring(self) -> DVRCtx:
        return self.values[0].ctx

    def value(self, name: str) -> DVRElem:
        return self.values[self.group.index(name)]

    def __call__(self, word) -> DVRElem:
        if isinstance(word, str):
            return self.value(word)
        word = self.group.element(word)
        out = self.ring.one()
        for v, e in zip(self.values, word):
            if e:
                out = out * (v ** e)
        return out

    def __mul__(self, other: "UnitCharacter") -> "UnitCharacter":
        _same_group(self.group, other.group)
        return make_unit_character(self.group, [a * b for a, b in zip(self.values, other.values)])

    def inverse(self) -> "UnitCharacter":
        return make_unit_character(self.group, [v.inverse() for v in self.values])

    def __eq__(self, other):
        return (isinstance(other, UnitCharacter) and self.group == other.group
                and self.values == other.values)

    def __hash__(self):
        return hash(self.values)

    def as_dict(self):
        return dict(zip(self.group.names, self.values))

    def __repr__(self):
        return "chi(" + ", ".join(f"{g}: {v!r}" for g, v in zip(self.group.names, self.values)) + ")"


def _same_group(g1, g2):
    if g1 != g2:
        raise GroupMismatch("characters or classes live on different groups")


def make_unit_character(group: AbelianGroupModel, values) -> UnitCharacter:
    """Validate generator values and build the character.

    ``values`` is a dict name -> DVRElem or a sequence aligned with the
    generators.  Torsion generators of order n must satisfy v^n = 1 exactly in
    O_N.
    """
    if isinstance(values, dict):
        unknown = set(values) - set(group.names)
        if unknown:
            raise InvalidInput(f"unknown generators {sorted(unknown)}")
        missing = set(group.names) - set(values)
        if missing:
            raise InvalidInput(f"missing values for generators {sorted(missing)}")
        values = [values[g] for g in group.names]
    values = tuple(values)
    if len(values) != len(group.generators):
        raise InvalidInput("wrong number of character values")
    ring = values[0].ctx
    if ring.p != group.p:
        raise InvalidInput("coefficient ring has the wrong characteristic")
    one = ring.one()
    for (name, n), v in zip(group.generators, values):
        if v.ctx != ring:
            raise InvalidInput("character values in different rings")
        if not v.is_unit():
            raise InvalidInput(f"value on {name} is not a unit")
        if n and v ** n != one:
            raise TorsionViolation(f"value on {name} does not have order dividing {n}: "
                                   f"({v!r})^{n} = {v ** n!r}")
    trivial = all((v - one).valuation() >= 1 for v in values)
    return UnitCharacter(group, values, trivial)


def trivial_character(group: AbelianGroupModel, ring: DVRCtx) -> UnitCharacter:
    return make_unit_character(group, [ring.one()] * len(group.generators))


@dataclass(frozen=True, eq=False)
class ResidualHom:
    """A homomorphism M -> (k, +), i.e. a class in H^1(M, k)."""

    group: AbelianGroupModel
    values: tuple

    def __post_init__(self):
        if len(self.values) != len(self.group.generators):
            raise InvalidInput("wrong number of values")
        for (name, n), v in zip(self.group.generators, self.values):
            if n and n % self.group.p and v:
                raise TorsionViolation(f"value on {name} must vanish: order {n} is prime to p")

    @classmethod
    def from_dict(cls, group, field: FiniteFieldCtx, values: dict) -> "ResidualHom":
        unknown = set(values) - set(group.names)
        if unknown:
            raise InvalidInput(f"unknown generators {sorted(unknown)}")
        return cls(group, tuple(field(values.get(g, 0)) for g in group.names))

    @classmethod
    def zero(cls, group, field):
        return cls(group, tuple(field.zero() for _ in group.generators))

    @property
    def field(self) -> FiniteFieldCtx:
        return self.values[0].ctx

    def value(self, name):
        return self.values[self.group.index(name)]

    def __call__(self, word) -> FFElem:
        word = self.group.element(word)
        out = self.field.zero()
        for v, e in zip(self.values, word):
            out = out + v * e
        return out

    def __add__(self, other):
        _same_group(self.group, other.group)
        return ResidualHom(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def __neg__(self):
        return ResidualHom(self.group, tuple(-a for a in self.values))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ResidualHom":
        return ResidualHom(self.group, tuple(c * a for a in self.values))

    def is_zero(self):
        return all(v.is_zero() for v in self.values)

    def normalized(self) -> "ResidualHom":
        """Line representative: first nonzero value (generator order) scaled to 1."""
        for v in self.values:
            if v:
                return self.scale(v.inverse())
        return self

    def __eq__(self, other):
        return (isinstance(other, ResidualHom) and self.group == other.group
                and self.values == other.values)

    def __hash__(self):
        return hash(tuple(v.code for v in self.values))

    def as_dict(self):
        return dict(zip(self.group.names, self.values))

    def __repr__(self):
        return "(" + ", ".join(f"{g}:{v!r}" for g, v in zip(self.group.names, self.values)) + ")"


def _check_pair(chi1: UnitCharacter, chi2: UnitCharacter):
    _same_group(chi1.group, chi2.group)
    if chi1.ring != chi2.ring:
        raise InvalidInput("characters valued in different rings")
    for chi in (chi1, chi2):
        if not chi.trivial_mod_uniformizer:
            raise NotResiduallyTrivial(f"{chi!r} is not trivial mod the uniformizer")


def congruence_level(chi1: UnitCharacter, chi2: UnitCharacter) -> int:
    """Largest a with chi1 = chi2 mod w^a; only reported when a <= N - 1."""
    _check_pair(chi1, chi2)
    a = min((x - y).valuation() for x, y in zip(chi1.values, chi2.values))
    if a >= chi1.ring.N:
        raise Indistinguishable(f"characters agree modulo w^{chi1.ring.N}")
    return a


def sigma_class(chi1: UnitCharacter, chi2: UnitCharacter) -> ResidualHom:
    """g -> reduction of w^{-a} (chi1(g) - chi2(g)), a the congruence level."""
    a = congruence_level(chi1, chi2)
    vals = tuple((x - y).divide_by_uniformizer_power(a).reduce()
                 for x, y in zip(chi1.values, chi2.values))
    return ResidualHom(chi1.group, vals)


def valid_values(group: AbelianGroupModel, ring: DVRCtx, name: str, min_val: int = 1):
    """All units 1 + O(w^min_val) that are admissible values on a generator."""
    n = group.orders[group.index(name)]
    one = ring.one()
    return [v for v in ring.units_one_mod(min_val) if not n or v ** n == one]


def residually_trivial_characters(group: AbelianGroupModel, ring: DVRCtx):
    """Every character M -> 1 + wO_N, in lexicographic order of generator values."""
    choices = [valid_values(group, ring, g) for g in group.names]
    for vals in itertools.product(*choices):
        yield UnitCharacter(group, tuple(vals), True)


def character_from_digits(group: AbelianGroupModel, ring: DVRCtx, digits: dict) -> UnitCharacter:
    """Character with value on g given by a digit list, e.g. {"u": [1, 1]} is u -> 1 + w."""
    return make_unit_character(group, {g: ring(digits.get(g, [1])) for g in group.names})


@dataclass(frozen=True, eq=False)
class ResidualCharacter:
    """A character M -> k^x (used as a twist label)."""

    group: AbelianGroupModel
    values: tuple

    def __post_init__(self):
        if len(self.values) != len(self.group.generators):
            raise InvalidInput("wrong number of values")
        for (name, n), v in zip(self.group.generators, self.values):
            if not v:
                raise InvalidInput(f"twist value on {name} must be nonzero")
            if n and v ** n != v.ctx.one():
                raise TorsionViolation(f"twist value on {name} does not have order dividing {n}")

    @classmethod
    def trivial(cls, group, field):
        return cls(group, tuple(field.one() for _ in group.generators))

    @classmethod
    def from_dict(cls, group, field, values: dict):
        unknown = set(values) - set(group.names)
        if unknown:
            raise InvalidInput(f"unknown generators {sorted(unknown)}")
        return cls(group, tuple(field(values.get(g, 1)) for g in group.names))

    @property
    def field(self):
        return self.values[0].ctx

    def __mul__(self, other):
        _same_group(self.group, other.group)
        return ResidualCharacter(self.group, tuple(a * b for a, b in zip(self.values, other.values)))

    def inverse(self):
        return ResidualCharacter(self.group, tuple(v.inverse() for v in self.values))

    def is_trivial(self):
        return all(v == 1 for v in self.values)

    def __eq__(self, other):
        return (isinstance(other, ResidualCharacter) and self.group == other.group
                and self.values == other.values)

    def __hash__(self):
        return hash(tuple(v.code for v in self.values))

    def sort_key(self):
        return tuple(v.code for v in self.values)

    def as_dict(self):
        return dict(zip(self.group.names, self.values))

    def __repr__(self):
        return "(" + ", ".join(f"{g}:{v!r}" for g, v in zip(self.group.names, self.values)) + ")"


def norm_character(group: AbelianGroupModel, field: FiniteFieldCtx) -> ResidualCharacter:
    """|.| reduced mod p: the uniformizer goes to q^{-1}, units to 1.

    Through class field theory this is also the mod p cyclotomic character.
    """
    q = group.q
    if q is None:
        raise InvalidInput("norm character needs the standard model")
    vals = [field(q).inverse() if n == 0 else field.one() for n in group.orders]
    return ResidualCharacter(group, tuple(vals))


def cft_transport(chi: UnitCharacter, normalization: str = "uniformizer_to_u") -> UnitCharacter:
    """Galois-side character -> character of F^x under the chosen reciprocity normalization."""
    if normalization == "uniformizer_to_u":
        return chi
    if normalization == "uniformizer_to_u_inverse":
        vals = [v.inverse() if n == 0 else v for v, n in zip(chi.values, chi.group.orders)]
        return UnitCharacter(chi.group, tuple(vals), chi.trivial_mod_uniformizer)
    raise InvalidInput(f"unknown normalization {normalization!r}")


def cft_transport_hom(sigma: ResidualHom, normalization: str = "uniformizer_to_u") -> ResidualHom:
    if normalization == "uniformizer_to_u":
        return sigma
    if normalization == "uniformizer_to_u_inverse":
        vals = [-v if n == 0 else v for v, n in zip(sigma.values, sigma.group.orders)]
        return ResidualHom(sigma.group, tuple(vals))
    raise InvalidInput(f"unknown normalization {normalization!r}")
