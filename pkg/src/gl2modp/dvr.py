"""Truncated discrete valuation rings O_N = O / (uniformizer^N).

Two backends implement the same interface:

* ``"series"``: k[w]/(w^N) for any finite field k (equal characteristic);
* ``"integers"``: Z/p^N Z, residue field F_p (mixed characteristic).

Every element carries a count of certified digits.  Exact inputs are certified
to all N digits; dividing by w^e drops e digits off the top, and reading a
digit that is not certified raises InsufficientPrecision instead of returning
garbage.  Digits at or above the certified count are always stored as zero.

``FracElem`` extends this to elements of the fraction field known modulo a
fixed power of the uniformizer (floating-point style: valuation, unit
mantissa, relative precision).
"""

from __future__ import annotations

import itertools
import math

from .errors import (InexactDivision, InsufficientPrecision, InvalidInput,
                     NonUnitBase, ZeroInversion)
from .field import FFElem, FiniteFieldCtx

BACKENDS = ("series", "integers")


class DVRCtx:
    """Shared machinery; subclasses supply the raw representation."""

    backend = None

    def __init__(self, residue: FiniteFieldCtx, N: int):
        if N < 2:
            raise InvalidInput(f"precision must be at least 2, got {N}")
        self.residue = residue
        self.N = N
        self.p = residue.p

    def __eq__(self, other):
        return (type(self) is type(other) and self.residue == other.residue
                and self.N == other.N)

    def __hash__(self):
        return hash((self.backend, self.residue, self.N))

    def __repr__(self):
        return f"{type(self).__name__}({self.residue!r}, N={self.N})"

    # constructors

    def __call__(self, digits, certified=None) -> "DVRElem":
        """Element sum(digits[i] * w^i); digits are ints, FFElems or coefficient lists."""
        if isinstance(digits, DVRElem):
            return digits
        if isinstance(digits, int):
            digits = [digits]
        digits = list(digits)
        if len(digits) > self.N:
            if any(self._code(d) for d in digits[self.N:]):
                # silently truncating would hide a caller bug
                raise InvalidInput(f"more than N={self.N} digits given")
            digits = digits[: self.N]
        codes = [self._code(d) for d in digits]
        codes += [0] * (self.N - len(codes))
        c = self.N if certified is None else certified
        return DVRElem(self, self._truncate(self._from_codes(codes), c), c)

    def _code(self, d):
        if isinstance(d, FFElem):
            return self.residue(d).code
        if isinstance(d, int):
            return d % self.p
        return self.residue.from_coeffs(d)

    def zero(self):
        return self([])

    def one(self):
        return self([1])

    def uniformizer(self):
        return self([0, 1])

    def from_residue(self, x: FFElem):
        return self([x])

    def elements(self, min_val=0):
        """All elements with valuation >= min_val, in digit-lexicographic order."""
        k = self.residue.order
        for tail in itertools.product(range(k), repeat=self.N - min_val):
            codes = [0] * min_val + list(reversed(tail))
            yield DVRElem(self, self._from_codes(codes), self.N)

    def units_one_mod(self, min_val=1):
        """All units congruent to 1 modulo w^min_val."""
        one = self.one()
        for x in self.elements(min_val):
            yield one + x


class SeriesDVR(DVRCtx):
    """k[w]/(w^N); raw values are tuples of N residue codes."""

    backend = "series"

    def _from_codes(self, codes):
        return tuple(codes)

    def _codes(self, raw):
        return raw

    def _truncate(self, raw, c):
        if c >= self.N:
            return raw
        return raw[:c] + (0,) * (self.N - c)

    def _val(self, raw):
        for i, c in enumerate(raw):
            if c:
                return i
        return self.N

    def _add(self, x, y):
        add = self.residue.add
        return tuple(add(a, b) for a, b in zip(x, y))

    def _neg(self, x):
        neg = self.residue.neg
        return tuple(neg(a) for a in x)

    def _mul(self, x, y):
        N, F = self.N, self.residue
        if F.d == 1:
            out = [0] * N
            for i, a in enumerate(x):
                if a:
                    for j in range(N - i):
                        out[i + j] += a * y[j]
            p = F.p
            return tuple(c % p for c in out)
        out = [0] * N
        for i, a in enumerate(x):
            if a:
                for j in range(N - i):
                    if y[j]:
                        out[i + j] = F.add(out[i + j], F.mul(a, y[j]))
        return tuple(out)

    def _shift_down(self, x, e):
        return x[e:] + (0,) * e

    def _shift_up(self, x, e):
        if e >= self.N:
            return (0,) * self.N
        return (0,) * e + x[: self.N - e]

    def _inverse(self, x):
        F = self.residue
        b0 = F.inv(x[0])
        out = [b0]
        for n in range(1, self.N):
            acc = 0
            for i in range(1, n + 1):
                if x[i]:
                    acc = F.add(acc, F.mul(x[i], out[n - i]))
            out.append(F.neg(F.mul(b0, acc)))
        return tuple(out)


class IntegerDVR(DVRCtx):
    """Z/p^N; raw values are ints in [0, p^N)."""

    backend = "integers"

    def __init__(self, residue: FiniteFieldCtx, N: int):
        if residue.d != 1:
            raise InvalidInput("the integers backend only supports k = F_p")
        super().__init__(residue, N)
        self.modulus = self.p ** N

    def _from_codes(self, codes):
        v = 0
        for c in reversed(codes):
            v = v * self.p + c
        return v

    def _codes(self, raw):
        out = []
        for _ in range(self.N):
            raw, c = divmod(raw, self.p)
            out.append(c)
        return tuple(out)

    def _truncate(self, raw, c):
        if c >= self.N:
            return raw
        return raw % (self.p ** max(c, 0))

    def _val(self, raw):
        if raw == 0:
            return self.N
        v = 0
        while raw % self.p == 0:
            raw //= self.p
            v += 1
        return v

    def _add(self, x, y):
        return (x + y) % self.modulus

    def _neg(self, x):
        return (-x) % self.modulus

    def _mul(self, x, y):
        return (x * y) % self.modulus

    def _shift_down(self, x, e):
        return x // self.p ** e

    def _shift_up(self, x, e):
        return (x * self.p ** e) % self.modulus

    def _inverse(self, x):
        return pow(x, -1, self.modulus)


def make_dvr(residue: FiniteFieldCtx, N: int, backend: str = "series") -> DVRCtx:
    if backend == "series":
        return SeriesDVR(residue, N)
    if backend == "integers":
        return IntegerDVR(residue, N)
    raise InvalidInput(f"unknown DVR backend {backend!r}; expected one of {BACKENDS}")


class DVRElem:
    """Element of a truncated DVR, certified modulo w^certified."""

    __slots__ = ("ctx", "raw", "certified")

    def __init__(self, ctx: DVRCtx, raw, certified: int):
        self.ctx = ctx
        self.raw = raw
        self.certified = certified

    @property
    def coeffs(self):
        """The N digits as residue field elements."""
        F = self.ctx.residue
        return [FFElem(F, c) for c in self.ctx._codes(self.raw)]

    digits = coeffs

    def _check(self, other):
        if isinstance(other, int):
            return self.ctx([other])
        if not isinstance(other, DVRElem):
            return NotImplemented
        if other.ctx is not self.ctx and other.ctx != self.ctx:
            raise InvalidInput("elements of different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        c = min(self.certified, other.certified)
        ctx = self.ctx
        return DVRElem(ctx, ctx._truncate(ctx._add(self.raw, other.raw), c), c)

    __radd__ = __add__

    def __neg__(self):
        return DVRElem(self.ctx, self.ctx._neg(self.raw), self.certified)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        v1 = min(ctx._val(self.raw), self.certified)
        v2 = min(ctx._val(other.raw), other.certified)
        c = min(ctx.N, self.certified + v2, other.certified + v1)
        return DVRElem(ctx, ctx._truncate(ctx._mul(self.raw, other.raw), c), c)

    __rmul__ = __mul__

    def valuation(self) -> int:
        """Index of the first nonzero digit; N for zero."""
        return self.ctx._val(self.raw)

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def is_zero(self) -> bool:
        return self.valuation() >= self.ctx.N

    def reduce(self) -> FFElem:
        if self.certified < 1:
            raise InsufficientPrecision("residue digit is not certified")
        return FFElem(self.ctx.residue, self.ctx._codes(self.raw)[0])

    def divide_by_uniformizer_power(self, e: int) -> "DVRElem":
        if e < 0:
            raise InvalidInput("negative shift")
        if e > self.valuation():
            raise InexactDivision(f"valuation {self.valuation()} < {e}")
        return DVRElem(self.ctx, self.ctx._shift_down(self.raw, e), max(self.certified - e, 0))

    def times_uniformizer_power(self, e: int) -> "DVRElem":
        c = min(self.ctx.N, self.certified + e)
        return DVRElem(self.ctx, self.ctx._shift_up(self.raw, e), c)

    def truncate(self, c: int) -> "DVRElem":
        c = min(c, self.certified)
        return DVRElem(self.ctx, self.ctx._truncate(self.raw, c), c)

    def inverse(self) -> "DVRElem":
        if not self.is_unit():
            raise ZeroInversion("only units are invertible in O_N")
        return DVRElem(self.ctx, self.ctx._inverse(self.raw), self.certified)

    def __pow__(self, n: int) -> "DVRElem":
        if n == 0:
            return self.ctx.one()
        if not self.is_unit():
            raise NonUnitBase("powers are only taken of units")
        if n < 0:
            return self.inverse() ** (-n)
        result, base = None, self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    unit_pow = __pow__

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx([other])
        return isinstance(other, DVRElem) and self.ctx == other.ctx and self.raw == other.raw

    def __hash__(self):
        return hash(self.raw)

    def __repr__(self):
        terms = []
        for i, d in enumerate(self.coeffs):
            if d:
                coef = "" if (d == 1 and i) else (f"({d})" if self.ctx.residue.d > 1 else str(d))
                terms.append(coef + ("" if i == 0 else ("w" if i == 1 else f"w^{i}")))
        s = " + ".join(terms) or "0"
        if self.certified < self.ctx.N:
            s += f" + O(w^{self.certified})"
        return s


def dvr_val(a: DVRElem) -> int:
    return a.valuation()


def dvr_divide_by_uniformizer_power(a: DVRElem, e: int) -> DVRElem:
    return a.divide_by_uniformizer_power(e)


def dvr_reduce(a: DVRElem) -> FFElem:
    return a.reduce()


def dvr_unit_pow(a: DVRElem, n: int) -> DVRElem:
    return a.unit_pow(n)


class FracElem:
    """Element w^exp * mant of the fraction field, known modulo w^abs_prec.

    ``mant`` is a unit of O_N, or None for a value that is zero at the known
    precision; in that case ``exp`` is the absolute precision itself, possibly
    ``math.inf`` for an exact zero.
    """

    __slots__ = ("ctx", "exp", "mant")

    def __init__(self, ctx: DVRCtx, exp, mant):
        self.ctx = ctx
        self.exp = exp
        self.mant = mant

    @classmethod
    def from_dvr(cls, x: DVRElem, exp: int = 0) -> "FracElem":
        v = x.valuation()
        if v >= x.certified:
            return cls(x.ctx, exp + x.certified, None)
        return cls(x.ctx, exp + v, x.divide_by_uniformizer_power(v))

    @classmethod
    def exact_zero(cls, ctx):
        return cls(ctx, math.inf, None)

    @classmethod
    def uniformizer_power(cls, ctx, e: int):
        return cls(ctx, e, ctx.one())

    @property
    def abs_prec(self):
        return self.exp if self.mant is None else self.exp + self.mant.certified

    def is_zero(self):
        return self.mant is None

    def valuation(self):
        """Valuation if certified nonzero, else None."""
        return None if self.mant is None else self.exp

    def __add__(self, other: "FracElem") -> "FracElem":
        x, y = self, other
        if x.mant is None:
            x, y = y, x
        if y.mant is None:
            if x.mant is None:
                return FracElem(x.ctx, min(x.exp, y.exp), None)
            if x.exp >= y.exp:
                return FracElem(x.ctx, y.exp, None)
            return FracElem(x.ctx, x.exp, x.mant.truncate(y.exp - x.exp))
        e = min(x.exp, y.exp)
        m = x.mant.times_uniformizer_power(x.exp - e) + y.mant.times_uniformizer_power(y.exp - e)
        return FracElem.from_dvr(m, e)

    def __neg__(self):
        return self if self.mant is None else FracElem(self.ctx, self.exp, -self.mant)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "FracElem") -> "FracElem":
        if self.mant is None or other.mant is None:
            return FracElem(self.ctx, self.exp + other.exp, None)
        return FracElem(self.ctx, self.exp + other.exp, self.mant * other.mant)

    def shift(self, e: int) -> "FracElem":
        """Multiply by w^e (exact)."""
        return FracElem(self.ctx, self.exp + e, self.mant)

    def inverse(self) -> "FracElem":
        if self.mant is None:
            raise InsufficientPrecision("cannot invert a value that is zero at known precision")
        return FracElem(self.ctx, -self.exp, self.mant.inverse())

    def is_integral(self) -> bool:
        if self.mant is not None:
            return self.exp >= 0
        if self.exp >= 0:
            return True
        raise InsufficientPrecision(f"value known only modulo w^{self.exp}")

    def reduce(self) -> FFElem:
        F = self.ctx.residue
        if self.mant is None:
            if self.exp < 1:
                raise InsufficientPrecision("residue digit is not certified")
            return F.zero()
        if self.exp < 0:
            raise InexactDivision("element is not integral")
        return F.zero() if self.exp > 0 else self.mant.reduce()

    def to_dvr(self) -> DVRElem:
        if not self.is_integral():
            raise InexactDivision("element is not integral")
        if self.mant is None:
            N = self.ctx.N
            return DVRElem(self.ctx, self.ctx.zero().raw, min(N, self.exp))
        return self.mant.times_uniformizer_power(self.exp)

    def __repr__(self):
        if self.mant is None:
            return f"O(w^{self.exp})"
        return f"w^{self.exp}*({self.mant!r})"
