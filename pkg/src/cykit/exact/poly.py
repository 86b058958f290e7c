"""Dense univariate polynomials and rational functions over Q."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from ..errors import DomainError

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c)
    return Fraction(c)


class Polynomial:
    """Univariate polynomial with rational coefficients, lowest degree first.

    ``var`` is only a display tag ('T' for theta, 'n', 'x'); arithmetic between
    polynomials with different tags is allowed and keeps the left tag.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = [as_fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self.var = var

    # construction helpers
    @classmethod
    def constant(cls, c, var="x") -> Polynomial:
        return cls([c], var)

    @classmethod
    def monomial(cls, k: int, c=1, var="x") -> Polynomial:
        return cls([0] * k + [c], var)

    @classmethod
    def gen(cls, var="x") -> Polynomial:
        return cls([0, 1], var)

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1, var="x") -> Polynomial:
        p = cls([lead], var)
        for r in roots:
            p = p * cls([-as_fraction(r), 1], var)
        return p

    # basic queries
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return _ZERO

    def valuation(self) -> int:
        """Exponent of the lowest nonzero coefficient (raises on zero)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise DomainError("valuation of the zero polynomial")

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]}, var={self.var!r})"

    def __str__(self):
        return format_poly(self, self.var)

    # arithmetic
    def _coerce(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial([other], self.var)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial([], self.var)
            return Polynomial([c * other for c in self.coeffs], self.var)
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial([], self.var)
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Polynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative power of a polynomial")
        result = Polynomial([1], self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction)):
            c = as_fraction(c)
            if not c:
                raise ZeroDivisionError("polynomial division by zero scalar")
            return Polynomial([x / c for x in self.coeffs], self.var)
        if isinstance(c, Polynomial):
            q, r = divmod(self, c)
            if r:
                raise DomainError("inexact polynomial division")
            return q
        return NotImplemented

    def __divmod__(self, other: Polynomial):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lc = other.lc
        if len(rem) - 1 < db:
            return Polynomial([], self.var), Polynomial(rem, self.var)
        q = [_ZERO] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] / lc
            q[k] = c
            if c:
                for j in range(db + 1):
                    rem[k + j] -= c * bc[j]
        return Polynomial(q, self.var), Polynomial(rem[:db], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # evaluation and transforms
    def __call__(self, t):
        acc = _ZERO if not isinstance(t, Polynomial) else Polynomial([], t.var)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> Polynomial:
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def shift(self, c) -> Polynomial:
        """Return p(t + c)."""
        c = as_fraction(c)
        if not c:
            return self
        out: list[Fraction] = []
        for a in reversed(self.coeffs):
            # out <- out*(t + c) + a
            new = [_ZERO] * (len(out) + 1)
            for i, v in enumerate(out):
                new[i + 1] += v
                new[i] += v * c
            new[0] += a
            out = new
        return Polynomial(out, self.var)

    def scale_arg(self, c) -> Polynomial:
        """Return p(c*t)."""
        c = as_fraction(c)
        return Polynomial([a * c**i for i, a in enumerate(self.coeffs)], self.var)

    def monic(self) -> Polynomial:
        if not self:
            return self
        return self / self.lc

    def with_var(self, var: str) -> Polynomial:
        return Polynomial(self.coeffs, var)

    def primitive(self) -> tuple[Fraction, Polynomial]:
        """Split into (content, primitive integer polynomial with positive lc)."""
        if not self:
            return _ZERO, self
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(gcd, ints, 0)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), Polynomial([Fraction(v, g) for v in ints], self.var)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def rational_roots(self) -> list[tuple[Fraction, int]]:
        """Rational roots with multiplicities, ascending."""
        if not self:
            raise DomainError("roots of the zero polynomial")
        out: list[tuple[Fraction, int]] = []
        p = self
        if p[0] == 0:
            v = p.valuation()
            out.append((_ZERO, v))
            p = Polynomial(p.coeffs[v:], p.var)
        if p.degree < 1:
            return sorted(out)
        _, prim = p.primitive()
        a0 = abs(int(prim[0]))
        an = abs(int(prim.lc))
        for num in _divisors(a0):
            for den in _divisors(an):
                if gcd(num, den) != 1:
                    continue
                for r in (Fraction(num, den), Fraction(-num, den)):
                    m = 0
                    lin = Polynomial([-r, 1], p.var)
                    while prim.degree >= 1 and prim(r) == 0:
                        prim = prim // lin
                        m += 1
                    if m:
                        out.append((r, m))
        return sorted(out)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return []
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over Q (zero if both are zero)."""
    while b:
        a, b = b, a % b
        if b:
            b = b.monic()
    return a.monic()


def format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Polynomial, var: str = "x") -> str:
    """Human readable form, highest degree first, using ``*`` and ``^``."""
    if not p:
        return "0"
    parts: list[str] = []
    for k in range(p.degree, -1, -1):
        c = p[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = format_coeff(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{format_coeff(a)}*{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for s, b in parts[1:]:
        out += f" {s} {b}"
    return out


class RationalFunction:
    """Reduced quotient of polynomials in x with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced=False):
        if not isinstance(num, Polynomial):
            num = Polynomial([num])
        if den is None:
            den = Polynomial([1])
        elif not isinstance(den, Polynomial):
            den = Polynomial([den])
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = Polynomial([]), Polynomial([1])
            return
        if not _reduced and den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            num, den = num / lc, den / lc
        self.num, self.den = num.with_var("x"), den.with_var("x")

    @classmethod
    def x_power(cls, k: int, c=1) -> RationalFunction:
        if k >= 0:
            return cls(Polynomial.monomial(k, c))
        return cls(Polynomial([c]), Polynomial.monomial(-k), _reduced=True)

    @classmethod
    def coerce(cls, v) -> RationalFunction:
        if isinstance(v, RationalFunction):
            return v
        return cls(v)

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den.degree == 0:
            return format_poly(self.num, "x")
        return f"({format_poly(self.num, 'x')})/({format_poly(self.den, 'x')})"

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        g = poly_gcd(self.den, other.den)
        if g.degree == 0:
            return RationalFunction(self.num * other.den + other.num * self.den,
                                    self.den * other.den)
        d1 = self.den // g
        d2 = other.den // g
        return RationalFunction(self.num * d2 + other.num * d1, d1 * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RationalFunction(0)
            return RationalFunction(self.num * other, self.den, _reduced=True)
        if isinstance(other, Polynomial):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if not self.num or not other.num:
            return RationalFunction(0)
        # cross-cancel keeps intermediate degrees small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n1, d2 = (self.num // g1, other.den // g1) if g1.degree > 0 else (self.num, other.den)
        n2, d1 = (other.num // g2, self.den // g2) if g2.degree > 0 else (other.num, self.den)
        return RationalFunction(n1 * n2, d1 * d2, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num, _reduced=True)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return RationalFunction(self.num / as_fraction(other), self.den, _reduced=True)
        if isinstance(other, Polynomial):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num ** k, self.den ** k, _reduced=True)

    def derivative(self) -> RationalFunction:
        n, d = self.num, self.den
        if d.degree == 0:
            return RationalFunction(n.derivative())
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, t):
        return self.num(t) / self.den(t)

    def pole_order_at_zero(self) -> int:
        """Order of the pole at x=0 (0 if regular; negative means a zero there)."""
        if not self.num:
            return 0
        return self.den.valuation() - self.num.valuation()

    def residue_at_zero(self) -> Fraction:
        """Coefficient of 1/x in the Laurent expansion at 0 (requires pole order <= 1)."""
        if self.pole_order_at_zero() > 1:
            raise DomainError("residue requested at a higher-order pole")
        if self.pole_order_at_zero() < 1:
            return _ZERO
        dv = self.den.valuation()  # == 1 + num valuation here
        d1 = Polynomial(self.den.coeffs[dv:])
        nv = self.num.valuation()
        return self.num[nv] / d1[0]


def common_denominator(rfs: Sequence[RationalFunction]) -> Polynomial:
    """Monic lcm of the denominators."""
    out = Polynomial([1])
    for r in rfs:
        g = poly_gcd(out, r.den)
        out = (out * r.den) // g
    return out.monic()
