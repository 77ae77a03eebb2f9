"""Finite fields F_{p^d} = F_p[x]/(m(x)).

Elements are stored as integer codes: the polynomial c_0 + c_1 x + ... +
c_{d-1} x^{d-1} has code c_0 + c_1 p + ... + c_{d-1} p^{d-1}.  Polynomials
(moduli, coefficient lists) are written low degree first, so the field
F_9 = F_3[x]/(x^2 + 1) has modulus [1, 0, 1].

Multiplication in proper extensions is done with discrete log tables, which
is fine for the desk-scale fields (p^d at most a few thousand) this package
targets.
"""

from __future__ import annotations

import itertools
from functools import cached_property

from .errors import InvalidInput, ZeroInversion


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    """Remainder of a modulo the monic polynomial b over F_p."""
    a = [c % p for c in a]
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _poly_trim(a[:db] if db > 0 else [])


def is_irreducible(modulus, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    m = _poly_trim(c % p for c in modulus)
    d = len(m) - 1
    if d < 1:
        return False
    for k in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            if not _poly_mod(m, list(low) + [1], p):
                return False
    return True


def conway_like_modulus(p: int, d: int):
    """Lexicographically first monic irreducible polynomial of degree d."""
    if d == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=d):
        cand = tuple(reversed(low)) + (1,)
        if cand[0] and is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FiniteFieldCtx:
    """The field F_p[x]/(modulus)."""

    def __init__(self, p: int, d: int = 1, modulus=None):
        if not is_prime(p) or p == 2:
            raise InvalidInput(f"p must be an odd prime, got {p}")
        if modulus is None:
            modulus = conway_like_modulus(p, d)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise InvalidInput(f"modulus must be monic of degree {d}: {list(modulus)}")
        if not is_irreducible(modulus, p):
            raise InvalidInput(f"modulus {list(modulus)} is reducible over F_{p}")
        self.p = p
        self.d = d
        self.modulus = modulus
        self.order = p ** d
        if d == 1:
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.mul = lambda a, b: (a * b) % p
            self.neg = lambda a: (-a) % p

    def __eq__(self, other):
        return (isinstance(other, FiniteFieldCtx) and self.p == other.p
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        if self.d == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.d}, modulus={list(self.modulus)})"

    # code <-> coefficient list

    def to_coeffs(self, code: int):
        out = []
        for _ in range(self.d):
            code, c = divmod(code, self.p)
            out.append(c)
        return out

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.d:
            coeffs = _poly_mod(coeffs, self.modulus, self.p)
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + int(c) % self.p
        return code

    # raw arithmetic on codes (d == 1 overrides these in __init__)

    def add(self, a, b):
        p = self.p
        out, scale = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * scale
            scale *= p
        return out

    def neg(self, a):
        p = self.p
        out, scale = 0, 1
        while a:
            a, x = divmod(a, p)
            out += ((-x) % p) * scale
            scale *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return 0
        exp, log = self._log_tables
        return exp[(log[a] + log[b]) % (self.order - 1)]

    def inv(self, a):
        if not a:
            raise ZeroInversion("zero has no inverse")
        if self.d == 1:
            return pow(a, -1, self.p)
        exp, log = self._log_tables
        return exp[(-log[a]) % (self.order - 1)]

    def _poly_mulmod(self, a, b):
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] += x * y
        return _poly_mod(prod, self.modulus, self.p)

    @cached_property
    def _log_tables(self):
        n = self.order - 1
        for g in range(1, self.order):
            exp = [0] * n
            log = {}
            cur = [1]
            gp = self.to_coeffs(g)
            ok = True
            for i in range(n):
                code = self.from_coeffs(cur)
                if code in log:
                    ok = False
                    break
                exp[i] = code
                log[code] = i
                cur = self._poly_mulmod(cur, gp)
            if ok:
                return exp, log
        raise AssertionError("no primitive element")  # pragma: no cover

    # elements

    def __call__(self, value) -> "FFElem":
        if isinstance(value, FFElem):
            if value.ctx != self:
                raise InvalidInput("element from a different field")
            return value
        if isinstance(value, int):
            return FFElem(self, value % self.p)
        return FFElem(self, self.from_coeffs(value))

    def zero(self):
        return FFElem(self, 0)

    def one(self):
        return FFElem(self, 1)

    def gen(self):
        """The class of x."""
        return self([0, 1]) if self.d > 1 else self.one()

    def elements(self):
        return [FFElem(self, c) for c in range(self.order)]


class FFElem:
    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FiniteFieldCtx, code: int):
        self.ctx = ctx
        self.code = code

    @property
    def coeffs(self):
        return self.ctx.to_coeffs(self.code)

    def _coerce(self, other):
        if isinstance(other, FFElem):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise InvalidInput("elements of different fields")
            return other.code
        if isinstance(other, int):
            return other % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FFElem(self.ctx, self.ctx.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FFElem(self.ctx, self.ctx.sub(self.code, b))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FFElem(self.ctx, self.ctx.neg(self.code))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FFElem(self.ctx, self.ctx.mul(self.code, b))

    __rmul__ = __mul__

    def inverse(self):
        return FFElem(self.ctx, self.ctx.inv(self.code))

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self * FFElem(self.ctx, b).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.ctx.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return self.code != 0

    def is_zero(self):
        return self.code == 0

    def __eq__(self, other):
        if isinstance(other, int):
            return self.code == other % self.ctx.p
        return isinstance(other, FFElem) and self.code == other.code and self.ctx == other.ctx

    def __hash__(self):
        return hash(self.code)

    def __repr__(self):
        if self.ctx.d == 1:
            return str(self.code)
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else (f"{c if c != 1 else ''}x" + (f"^{i}" if i > 1 else "")))
        return " + ".join(terms) or "0"


def ff_inv(x: FFElem) -> FFElem:
    return x.inverse()


def ff_mul(x: FFElem, y: FFElem) -> FFElem:
    return x * y
