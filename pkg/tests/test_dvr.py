import pytest
from hypothesis import given, settings, strategies as st

from gl2modp.dvr import FracElem, make_dvr
from gl2modp.errors import (InexactDivision, InsufficientPrecision, InvalidInput,
                            NonUnitBase, ZeroInversion)
from gl2modp.field import FiniteFieldCtx

F3 = FiniteFieldCtx(3)
F9 = FiniteFieldCtx(3, 2, [1, 0, 1])
RINGS = [make_dvr(F3, 4), make_dvr(F3, 4, "integers"), make_dvr(F9, 3), make_dvr(FiniteFieldCtx(5), 3, "integers")]


def digit_lists(R):
    return st.lists(st.integers(0, R.residue.order - 1), min_size=R.N, max_size=R.N).map(
        lambda cs: R([R.residue.to_coeffs(c) for c in cs]))


@pytest.mark.parametrize("R", RINGS, ids=lambda R: f"{R.backend}-{R.residue.order}-{R.N}")
def test_ring_axioms(R):
    @given(digit_lists(R), digit_lists(R), digit_lists(R))
    @settings(max_examples=60)
    def check(a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == R.zero()
        assert a * R.one() == a
        if a.is_unit():
            assert a * a.inverse() == R.one()
    check()


@given(st.integers(0, 80), st.integers(0, 80))
def test_integers_backend_matches_python_ints(x, y):
    R = make_dvr(F3, 4, "integers")
    def to_elem(n):
        return R([(n // 3 ** i) % 3 for i in range(4)])
    assert to_elem(x) * to_elem(y) == to_elem(x * y % 81)
    assert to_elem(x) + to_elem(y) == to_elem((x + y) % 81)


@given(st.lists(st.integers(0, 2), min_size=4, max_size=4),
       st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_series_backend_matches_truncated_convolution(xs, ys):
    R = make_dvr(F3, 4)
    prod = [sum(xs[i] * ys[n - i] for i in range(n + 1)) % 3 for n in range(4)]
    assert (R(xs) * R(ys)).coeffs == [F3(c) for c in prod]


def test_series_frobenius_and_torsion():
    # in characteristic p the binomial middle terms vanish
    R4, R3 = make_dvr(F3, 4), make_dvr(F3, 3)
    assert (R4([1, 1]) ** 3) == R4([1, 0, 0, 1])
    assert (R3([1, 1]) ** 3) == R3.one()


def test_integers_backend_carries():
    R = make_dvr(F3, 3, "integers")
    assert R([2]) + R([1]) == R([0, 1])          # 2 + 1 = 3
    assert R([1, 1]) ** 3 == R([1, 0, 1])        # 4^3 = 64 = 10 = 1 + 9 mod 27


def test_f9_series_inverse_example():
    R = make_dvr(F9, 3)
    x = R([[0, 1]])                                # the residue class of the generator
    assert x.inverse().coeffs[0].coeffs == [0, 2]


def test_valuation_and_division():
    R = make_dvr(F3, 5)
    a = R([0, 0, 2, 1])
    assert a.valuation() == 2 and R.zero().valuation() == 5
    q = a.divide_by_uniformizer_power(2)
    assert q == R([2, 1]) and q.certified == 3
    with pytest.raises(InexactDivision):
        a.divide_by_uniformizer_power(3)


def test_uncertified_digits_are_not_readable():
    R = make_dvr(F3, 3)
    a = R([0, 0, 1]).divide_by_uniformizer_power(2)
    assert a.reduce() == F3(1) and a.certified == 1
    b = (a - a)
    zero_approx = R([0, 0, 1]) - R([0, 0, 1])
    assert b.certified == 1
    shifted = zero_approx.divide_by_uniformizer_power(3)
    with pytest.raises(InsufficientPrecision):
        shifted.reduce()


def test_multiplication_certification():
    R = make_dvr(F3, 5)
    a = R([1, 1], certified=2)      # known mod w^2
    w2 = R([0, 0, 1])
    assert (a * w2).certified == 4  # w^2 * (1 + w + O(w^2))
    assert (a * a).certified == 2


def test_non_unit_errors():
    R = make_dvr(F3, 4)
    with pytest.raises(ZeroInversion):
        R.uniformizer().inverse()
    with pytest.raises(NonUnitBase):
        R.uniformizer() ** 2
    assert R.uniformizer() ** 0 == R.one()
    with pytest.raises(InvalidInput):
        R([1, 0, 0, 0, 1])
    with pytest.raises(InvalidInput):
        make_dvr(F9, 3, "integers")


def test_frac_arithmetic():
    R = make_dvr(F3, 4)
    w_inv = FracElem.uniformizer_power(R, -1)
    x = FracElem.from_dvr(R([0, 1, 1]))                   # w + w^2
    y = x * w_inv
    assert y.valuation() == 0 and y.to_dvr() == R([1, 1])
    assert (x * x.inverse()).to_dvr() == R.one()
    assert not (w_inv).is_integral()
    z = x - x
    assert z.is_zero() and z.abs_prec == 4
    assert FracElem.exact_zero(R).is_integral()
    with pytest.raises(InsufficientPrecision):
        z.shift(-5).is_integral()
