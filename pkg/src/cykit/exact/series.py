"""Truncated Laurent/power series, log-series and gauge factors over Q.

A :class:`PowerSeries` stores ``coeffs[i]`` as the coefficient of
``x**(val + i)`` and is exact through ``x**order`` (absolute precision).
Ordinary power series have ``val == 0``; negative ``val`` appears when a series
is divided by a power of x, e.g. after differentiating ``log(x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from ..errors import DomainError, PreconditionError, UnsupportedSingularityError
from .poly import Polynomial, RationalFunction, as_fraction

_ZERO = Fraction(0)

DEFAULT_ORDER = 20


class PowerSeries:
    __slots__ = ("coeffs", "val", "order")

    def __init__(self, coeffs: Iterable = (), order: int | None = None, val: int = 0):
        cs = [as_fraction(c) for c in coeffs]
        if order is None:
            order = val + len(cs) - 1
        n = order - val + 1
        if n < 0:
            n = 0
        if len(cs) < n:
            cs.extend([_ZERO] * (n - len(cs)))
        elif len(cs) > n:
            del cs[n:]
        self.coeffs: list[Fraction] = cs
        self.val = val
        self.order = order

    @classmethod
    def one(cls, order=DEFAULT_ORDER) -> PowerSeries:
        return cls([1], order)

    @classmethod
    def x(cls, order=DEFAULT_ORDER) -> PowerSeries:
        return cls([0, 1], order)

    @classmethod
    def from_polynomial(cls, p: Polynomial, order=DEFAULT_ORDER) -> PowerSeries:
        return cls(p.coeffs, order)

    @classmethod
    def zero(cls, order=DEFAULT_ORDER, val=0) -> PowerSeries:
        return cls([], order, val)

    def __getitem__(self, k: int) -> Fraction:
        if k > self.order:
            raise IndexError(f"coefficient x^{k} beyond truncation order {self.order}")
        i = k - self.val
        if i < 0:
            return _ZERO
        return self.coeffs[i]

    def items(self):
        for i, c in enumerate(self.coeffs):
            yield self.val + i, c

    def coefficients(self, upto: int | None = None) -> list[Fraction]:
        """Coefficients of x^0..x^upto (default: order)."""
        upto = self.order if upto is None else upto
        return [self[k] for k in range(0, upto + 1)]

    def valuation(self) -> int | None:
        """Exponent of the first nonzero known coefficient (None if all known ones vanish)."""
        for k, c in self.items():
            if c:
                return k
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if len(self.coeffs) > 8 else ""
        return f"PowerSeries([{head}{more}], val={self.val}, order={self.order})"

    def __str__(self):
        terms = []
        for k, c in self.items():
            if c:
                terms.append(f"{c}*x^{k}")
        return (" + ".join(terms) or "0") + f" + O(x^{self.order + 1})"

    def truncate(self, order: int) -> PowerSeries:
        return PowerSeries(self.coeffs, min(order, self.order), self.val)

    def normalized(self) -> PowerSeries:
        """Drop leading zero coefficients (raises val); keeps order."""
        v = self.valuation()
        if v is None or v == self.val:
            return self
        return PowerSeries(self.coeffs[v - self.val:], self.order, v)

    def equal_to_order(self, other: PowerSeries, order: int) -> bool:
        lo = min(self.val, other.val)
        return all(self[k] == other[k] for k in range(lo, order + 1))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PowerSeries([other], self.order)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        if self.order != other.order:
            return False
        return self.equal_to_order(other, self.order)

    __hash__ = None

    # arithmetic
    def _lift(self, other) -> PowerSeries | None:
        if isinstance(other, PowerSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return PowerSeries([other], max(self.order, 0))
        if isinstance(other, Polynomial):
            return PowerSeries(other.coeffs, max(self.order, other.degree))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        order = min(self.order, o.order)
        val = min(self.val, o.val)
        out = [_ZERO] * max(order - val + 1, 0)
        for k, c in self.items():
            if k <= order:
                out[k - val] += c
        for k, c in o.items():
            if k <= order:
                out[k - val] += c
        return PowerSeries(out, order, val)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.order, self.val)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PowerSeries([c * other for c in self.coeffs], self.order, self.val)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.normalized(), o.normalized()
        val = a.val + b.val
        order = min(a.order + b.val, b.order + a.val)
        n = order - val + 1
        if n <= 0:
            return PowerSeries([], order, val)
        ac, bc = a.coeffs[:n], b.coeffs[:n]
        out = [_ZERO] * n
        for i, ai in enumerate(ac):
            if not ai:
                continue
            lim = n - i
            for j in range(min(lim, len(bc))):
                bj = bc[j]
                if bj:
                    out[i + j] += ai * bj
        return PowerSeries(out, order, val)

    __rmul__ = __mul__

    def inverse(self) -> PowerSeries:
        a = self.normalized()
        if not a.coeffs or not a.coeffs[0]:
            raise DomainError("series inverse needs a nonzero leading coefficient")
        n = a.order - a.val + 1
        c = a.coeffs
        inv0 = 1 / c[0]
        out = [inv0]
        for k in range(1, n):
            s = _ZERO
            for j in range(1, min(k, len(c) - 1) + 1):
                if c[j]:
                    s += c[j] * out[k - j]
            out.append(-s * inv0)
        return PowerSeries(out, a.order - 2 * a.val, -a.val)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / as_fraction(other))
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return PowerSeries([1], self.order - self.val)
        result = self
        for _ in range(k - 1):
            result = result * self
        return result

    def shift(self, k: int) -> PowerSeries:
        """Multiply by x**k."""
        return PowerSeries(self.coeffs, self.order + k, self.val + k)

    def derivative(self) -> PowerSeries:
        out = [(self.val + i) * c for i, c in enumerate(self.coeffs)]
        if self.val == 0:
            return PowerSeries(out[1:], self.order - 1, 0)
        return PowerSeries(out, self.order - 1, self.val - 1)

    def integral(self) -> PowerSeries:
        """Antiderivative with zero constant term (no x^-1 term allowed)."""
        out = []
        for k, c in self.items():
            if k == -1:
                if c:
                    raise DomainError("integral of a series with a 1/x term")
                out.append(_ZERO)
            else:
                out.append(c / (k + 1))
        return PowerSeries(out, self.order + 1, self.val + 1)

    def theta(self) -> PowerSeries:
        """Apply x*d/dx."""
        return PowerSeries([(self.val + i) * c for i, c in enumerate(self.coeffs)],
                           self.order, self.val)

    def exp(self) -> PowerSeries:
        """exp of a series with no constant or negative-exponent terms."""
        if self.val < 0 and any(self[k] for k in range(self.val, 0)):
            raise DomainError("exp of a series with negative exponents")
        if self.val <= 0 and self[0]:
            raise DomainError("exp needs a vanishing constant term")
        n = self.order + 1
        f = [self[k] for k in range(n)]
        g = [Fraction(1)] + [_ZERO] * (n - 1)
        for m in range(1, n):
            s = _ZERO
            for k in range(1, m + 1):
                if f[k]:
                    s += k * f[k] * g[m - k]
            g[m] = s / m
        return PowerSeries(g, self.order)

    def log(self) -> PowerSeries:
        """log of a unit series (constant term 1)."""
        if self.val != 0 or self[0] != 1:
            a = self.normalized()
            if a.val != 0 or a.coeffs[0] != 1:
                raise DomainError("log needs a series with constant term 1")
        return (self.derivative() / self).integral()

    def compose(self, g: PowerSeries) -> PowerSeries:
        """self(g(x)) for a series g with g(0) = 0 (self must be a power series)."""
        if self.val < 0:
            raise DomainError("cannot compose a Laurent series")
        v = g.valuation()
        if v is not None and v < 1:
            raise DomainError("inner series must vanish at 0")
        order = g.order
        if v is not None:
            order = min(order, v * (self.order + 1) - 1)
        gt = g.truncate(order)
        acc = PowerSeries([], order)
        for k in range(self.order, -1, -1):
            acc = acc * gt + PowerSeries([self[k]], order)
        return acc.truncate(order)

    def hadamard(self, other: PowerSeries) -> PowerSeries:
        order = min(self.order, other.order)
        return PowerSeries([self[k] * other[k] for k in range(order + 1)], order)

    def to_polynomial(self) -> Polynomial:
        if self.val < 0:
            raise DomainError("Laurent series is not a polynomial")
        return Polynomial([self[k] for k in range(self.order + 1)])


def series_reversion(s: PowerSeries) -> PowerSeries:
    """Compositional inverse of s = x + O(x^2) by Lagrange inversion."""
    if s.val < 0 or s[0] != 0 or s[1] != 1:
        raise PreconditionError("series reversion needs s(0) = 0 and s'(0) = 1")
    if s.order < 2:
        raise PreconditionError("series reversion needs truncation order >= 2")
    M = s.order
    # h = x / s(x), a unit series exact to order M - 1
    h = PowerSeries([s[k] for k in range(1, M + 1)], M - 1).inverse()
    out = [_ZERO, Fraction(1)]
    hp = h
    for n in range(2, M + 1):
        hp = (hp * h)
        # [x^n] g = (1/n) [z^(n-1)] h^n
        out.append(hp[n - 1] / n)
    return PowerSeries(out, M)


def laurent_expand(r: RationalFunction, order: int = DEFAULT_ORDER) -> tuple[int, PowerSeries]:
    """Write r = x^v * u(x) with u(0) != 0; u exact through x^order."""
    if not r:
        return 0, PowerSeries([], order)
    vn = r.num.valuation()
    vd = r.den.valuation()
    num = Polynomial(r.num.coeffs[vn:])
    den = Polynomial(r.den.coeffs[vd:])
    u = PowerSeries(num.coeffs, order) / PowerSeries(den.coeffs, order)
    return vn - vd, u


def rf_series(r: RationalFunction, order: int = DEFAULT_ORDER) -> PowerSeries:
    """Laurent series of r exact through x^order."""
    if not r:
        return PowerSeries([], order)
    v = r.num.valuation() - r.den.valuation()
    _, u = laurent_expand(r, max(order - v, 0))
    return u.shift(v).truncate(order)


@dataclass(frozen=True)
class GaugeSeries:
    """x^rho times a unit power series."""

    rho: Fraction
    unit: PowerSeries

    def __post_init__(self):
        if self.unit[0] != 1:
            raise DomainError("gauge unit must have constant term 1")

    @property
    def order(self) -> int:
        return self.unit.order

    def __mul__(self, other: GaugeSeries) -> GaugeSeries:
        return GaugeSeries(self.rho + other.rho, self.unit * other.unit)

    def __pow__(self, k: int) -> GaugeSeries:
        return GaugeSeries(self.rho * k, self.unit ** k if k >= 0 else self.unit.inverse() ** (-k))

    def inverse(self) -> GaugeSeries:
        return GaugeSeries(-self.rho, self.unit.inverse())

    def as_series(self) -> PowerSeries:
        """Laurent series; only available for integral exponent."""
        if self.rho.denominator != 1:
            raise DomainError(f"x^{self.rho} is not a Laurent monomial")
        return self.unit.shift(int(self.rho))

    def log_derivative(self) -> PowerSeries:
        """f'/f = rho/x + unit'/unit."""
        return (self.unit.derivative() / self.unit) + PowerSeries([self.rho], self.order - 1, -1)


def gauge_series(r: RationalFunction, lam, order: int = DEFAULT_ORDER) -> GaugeSeries:
    """exp(lam * integral(r dx)) = x^rho * unit with rho = lam * res_0(r)."""
    lam = as_fraction(lam)
    if r.pole_order_at_zero() > 1:
        raise UnsupportedSingularityError("gauge factor needs at most a simple pole at x = 0")
    res = r.residue_at_zero()
    regular = r - RationalFunction.x_power(-1, res) if res else r
    s = rf_series(regular, order - 1)
    unit = (s * lam).integral().exp()
    return GaugeSeries(lam * res, unit.truncate(order))


class LogSeries:
    """y = sum_j parts[j](x) * log(x)^j / j!  with Laurent-series parts."""

    __slots__ = ("parts",)

    def __init__(self, parts: Sequence[PowerSeries]):
        parts = list(parts)
        if not parts:
            raise DomainError("log series needs at least one part")
        order = min(p.order for p in parts)
        parts = [p if p.order == order else p.truncate(order) for p in parts]
        while len(parts) > 1 and parts[-1].is_zero():
            parts.pop()
        self.parts: list[PowerSeries] = parts

    @classmethod
    def of(cls, s: PowerSeries) -> LogSeries:
        return cls([s])

    @classmethod
    def log(cls, order=DEFAULT_ORDER) -> LogSeries:
        return cls([PowerSeries([], order), PowerSeries([1], order)])

    @property
    def order(self) -> int:
        return self.parts[0].order

    @property
    def J(self) -> int:
        return len(self.parts) - 1

    def part(self, j: int) -> PowerSeries:
        if j < len(self.parts):
            return self.parts[j]
        return PowerSeries([], self.order)

    def __repr__(self):
        return f"LogSeries(J={self.J}, order={self.order}, parts={self.parts!r})"

    def truncate(self, order: int) -> LogSeries:
        return LogSeries([p.truncate(order) for p in self.parts])

    def _lift(self, other) -> LogSeries | None:
        if isinstance(other, LogSeries):
            return other
        if isinstance(other, PowerSeries):
            return LogSeries([other])
        if isinstance(other, (int, Fraction)):
            return LogSeries([PowerSeries([other], max(self.order, 0))])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.parts), len(o.parts))
        return LogSeries([self.part(j) + o.part(j) for j in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return LogSeries([-p for p in self.parts])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LogSeries([p * other for p in self.parts])
        if isinstance(other, PowerSeries):
            return LogSeries([p * other for p in self.parts])
        if not isinstance(other, LogSeries):
            return NotImplemented
        out: list[PowerSeries | None] = [None] * (len(self.parts) + len(other.parts) - 1)
        for i, u in enumerate(self.parts):
            if u.is_zero():
                continue
            for j, v in enumerate(other.parts):
                if v.is_zero():
                    continue
                term = (u * v) * comb(i + j, i)
                out[i + j] = term if out[i + j] is None else out[i + j] + term
        order = min(min(p.order for p in self.parts) + min(q.val for q in other.parts),
                    min(q.order for q in other.parts) + min(p.val for p in self.parts))
        return LogSeries([p if p is not None else PowerSeries([], order) for p in out])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / as_fraction(other))
        if isinstance(other, PowerSeries):
            inv = other.inverse()
            return LogSeries([p * inv for p in self.parts])
        if isinstance(other, LogSeries) and other.J == 0:
            return self / other.parts[0]
        raise DomainError("log series can only be divided by a plain power series")

    def derivative(self) -> LogSeries:
        """d/dx; the log^j/j! part contributes parts[j]/x to the log^(j-1) slot."""
        n = len(self.parts)
        out = [p.derivative() for p in self.parts]
        for j in range(1, n):
            out[j - 1] = out[j - 1] + self.parts[j].shift(-1)
        return LogSeries(out)

    def theta(self) -> LogSeries:
        n = len(self.parts)
        out = [p.theta() for p in self.parts]
        for j in range(1, n):
            out[j - 1] = out[j - 1] + self.parts[j]
        return LogSeries(out)

    def shift(self, k: int) -> LogSeries:
        return LogSeries([p.shift(k) for p in self.parts])

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.parts)

    def valuation(self) -> int | None:
        vals = [p.valuation() for p in self.parts]
        vals = [v for v in vals if v is not None]
        return min(vals) if vals else None

    def equal_to_order(self, other: LogSeries, order: int) -> bool:
        n = max(len(self.parts), len(other.parts))
        return all(self.part(j).equal_to_order(other.part(j), order) for j in range(n))


def stirling(kind: str, n: int, j: int) -> Fraction:
    """Stirling numbers: 'second' S(n, j), 'first' signed s(n, j), for 1 <= j <= n."""
    if not (1 <= j <= n):
        raise DomainError(f"Stirling index out of range: n={n}, j={j}")
    if kind == "second":
        return Fraction(stirling2_table(n)[n][j])
    if kind == "first":
        return Fraction(stirling1_table(n)[n][j])
    raise DomainError(f"unknown Stirling kind {kind!r}")


def stirling2_table(nmax: int) -> list[list[int]]:
    """S[n][j] for 0 <= j <= n <= nmax, with S(0, 0) = 1."""
    S = [[1]]
    for n in range(1, nmax + 1):
        row = [0] * (n + 1)
        prev = S[-1]
        for j in range(1, n + 1):
            row[j] = (prev[j - 1] if j - 1 < len(prev) else 0) + j * (prev[j] if j < len(prev) else 0)
        S.append(row)
    return S


def stirling1_table(nmax: int) -> list[list[int]]:
    """Signed s[n][j]: coefficients of the falling factorial t(t-1)...(t-n+1)."""
    s = [[1]]
    for n in range(1, nmax + 1):
        prev = s[-1]
        row = [0] * (n + 1)
        for j in range(1, n + 1):
            row[j] = (prev[j - 1] if j - 1 < len(prev) else 0) - (n - 1) * (prev[j] if j < len(prev) else 0)
        s.append(row)
    return s


def _det(matrix: list[list]):
    """Determinant by expansion over column prefixes; entries form a commutative ring."""
    p = len(matrix)
    # minors[S] = det of rows S with the first |S| columns
    minors: dict[tuple[int, ...], object] = {(): 1}
    for col in range(p):
        nxt: dict[tuple[int, ...], object] = {}
        for rows, m in minors.items():
            for r in range(p):
                if r in rows:
                    continue
                new = tuple(sorted(rows + (r,)))
                # sign: position of r among the new row set, counted from the end
                pos = sum(1 for q in rows if q > r)
                term = matrix[r][col] * m
                if pos % 2:
                    term = -term
                nxt[new] = term if new not in nxt else nxt[new] + term
        minors = nxt
    return minors[tuple(range(p))]


def log_wronskian(solutions: Sequence[LogSeries]) -> LogSeries:
    """Wronskian determinant det(d^i y_j / dx^i), 0 <= i < p."""
    sols = [s if isinstance(s, LogSeries) else LogSeries([s]) for s in solutions]
    if not sols:
        raise PreconditionError("Wronskian of an empty list")
    orders = {s.order for s in sols}
    if len(orders) > 1:
        raise PreconditionError("Wronskian inputs must share the truncation order")
    p = len(sols)
    rows = [sols]
    for _ in range(1, p):
        rows.append([y.derivative() for y in rows[-1]])
    return _det(rows)


def falling_factorial_poly(n: int, var="T") -> Polynomial:
    p = Polynomial([1], var)
    for i in range(n):
        p = p * Polynomial([-i, 1], var)
    return p


def multinomial_square_sum(parts: int, n: int) -> int:
    """sum over compositions of n into `parts` parts of (n!/prod k_i!)^2."""
    base = [Fraction(1, factorial(k) ** 2) for k in range(n + 1)]
    acc = [Fraction(1)] + [_ZERO] * n
    for _ in range(parts):
        acc = [sum(acc[i] * base[m - i] for i in range(m + 1)) for m in range(n + 1)]
    return int(acc[n] * factorial(n) ** 2)
