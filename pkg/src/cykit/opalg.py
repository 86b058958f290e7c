"""Differential operators in theta-form and in d/dx-form.

A :class:`ThetaOperator` is ``sum_i x^i P_i(theta)`` with ``theta = x d/dx``
(the x-powers stand to the left).  A :class:`DOperator` is
``sum_j c_j(x) D^j`` with rational-function coefficients; the monic flavour
is :class:`MonicOperator`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb, gcd, lcm
from typing import Sequence

from .errors import DomainError, PreconditionError
from .exact import (
    LogSeries,
    Polynomial,
    PowerSeries,
    RationalFunction,
    as_fraction,
    common_denominator,
    poly_gcd,
    rf_series,
    stirling1_table,
    stirling2_table,
)

T = Polynomial([0, 1], "T")


def theta_poly(coeffs) -> Polynomial:
    return Polynomial(coeffs, "T")


class ThetaOperator:
    """L = sum_i x^i P_i(theta); ``order`` is max deg P_i, ``degree`` the top x-power."""

    __slots__ = ("polys",)

    def __init__(self, polys: Sequence):
        ps = [p.with_var("T") if isinstance(p, Polynomial) else theta_poly([p]) for p in polys]
        while ps and not ps[-1]:
            ps.pop()
        self.polys: tuple[Polynomial, ...] = tuple(ps)

    @classmethod
    def theta_power(cls, k: int) -> ThetaOperator:
        return cls([T ** k])

    @classmethod
    def x(cls) -> ThetaOperator:
        return cls([theta_poly([]), theta_poly([1])])

    @classmethod
    def scalar(cls, c) -> ThetaOperator:
        return cls([theta_poly([c])])

    @property
    def order(self) -> int:
        return max((p.degree for p in self.polys), default=-1)

    @property
    def degree(self) -> int:
        return len(self.polys) - 1

    def P(self, i: int) -> Polynomial:
        return self.polys[i] if 0 <= i < len(self.polys) else theta_poly([])

    def is_zero(self) -> bool:
        return not self.polys

    def __bool__(self):
        return bool(self.polys)

    def __eq__(self, other):
        if not isinstance(other, ThetaOperator):
            return NotImplemented
        return self.polys == other.polys

    def __hash__(self):
        return hash(self.polys)

    def __repr__(self):
        from .text import render_operator

        return f"ThetaOperator({render_operator(self)!r})"

    def __str__(self):
        from .text import render_operator

        return render_operator(self)

    # ring structure of the Weyl algebra
    def __add__(self, other):
        other = _as_theta(other)
        n = max(len(self.polys), len(other.polys))
        return ThetaOperator([self.P(i) + other.P(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return ThetaOperator([-p for p in self.polys])

    def __sub__(self, other):
        return self + (-_as_theta(other))

    def __rsub__(self, other):
        return _as_theta(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ThetaOperator([p * other for p in self.polys])
        return weyl_multiply(self, _as_theta(other))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ThetaOperator([p * other for p in self.polys])
        return weyl_multiply(_as_theta(other), self)

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative power of an operator")
        out = ThetaOperator.scalar(1)
        for _ in range(k):
            out = out * self
        return out

    def canonical(self) -> ThetaOperator:
        """Integer coefficients with content 1; the lowest nonzero P_i has positive lc."""
        if not self.polys:
            return self
        coeffs = [c for p in self.polys for c in p.coeffs]
        den = reduce(lcm, (c.denominator for c in coeffs), 1)
        g = reduce(gcd, (int(c * den) for c in coeffs), 0)
        first = next(p for p in self.polys if p)
        scale = Fraction(den, g)
        if first.lc < 0:
            scale = -scale
        if scale == 1:
            return self
        return ThetaOperator([p * scale for p in self.polys])

    def strip_x(self) -> ThetaOperator:
        """Remove a common left factor x^j (drop leading zero P_i)."""
        i = 0
        while i < len(self.polys) and not self.polys[i]:
            i += 1
        return ThetaOperator(self.polys[i:]) if i else self

    def theta_columns(self) -> list[Polynomial]:
        """c_j(x) with L = sum_j c_j(x) theta^j."""
        k = self.order
        return [Polynomial([p[j] for p in self.polys]) for j in range(k + 1)]

    def remove_left_content(self) -> ThetaOperator:
        """Divide out the largest polynomial left factor g(x)."""
        cols = self.theta_columns()
        g = reduce(poly_gcd, (c for c in cols if c), Polynomial([]))
        if g.degree <= 0:
            return self
        cols = [c // g for c in cols]
        deg = max(c.degree for c in cols)
        return ThetaOperator([theta_poly([c[i] for c in cols]) for i in range(deg + 1)])

    def normal_form(self) -> ThetaOperator:
        return self.remove_left_content().canonical()

    def same_equation(self, other: ThetaOperator) -> bool:
        return self.normal_form() == other.normal_form()

    # action on series
    def apply(self, y):
        """Apply to a PowerSeries or LogSeries (truncation order drops by nothing)."""
        total = None
        for i, p in enumerate(self.polys):
            if not p:
                continue
            acc = None
            for c in reversed(p.coeffs):
                acc = y * c if acc is None else acc.theta() + y * c
            acc = acc.shift(i)
            total = acc if total is None else total + acc
        if total is None:
            return y * 0
        return total


def _as_theta(v) -> ThetaOperator:
    if isinstance(v, ThetaOperator):
        return v
    if isinstance(v, (int, Fraction)):
        return ThetaOperator.scalar(v)
    if isinstance(v, Polynomial):
        return ThetaOperator([v.with_var("T")])
    raise TypeError(f"cannot interpret {type(v).__name__} as an operator")


def weyl_multiply(A: ThetaOperator, B: ThetaOperator) -> ThetaOperator:
    """Product in the Weyl algebra: P(theta) x^j = x^j P(theta + j)."""
    if not A.polys or not B.polys:
        return ThetaOperator([])
    out = [theta_poly([]) for _ in range(A.degree + B.degree + 1)]
    for i, p in enumerate(A.polys):
        if not p:
            continue
        for j, q in enumerate(B.polys):
            if q:
                out[i + j] = out[i + j] + p.shift(j) * q
    return ThetaOperator(out)


def theta_shift(L: ThetaOperator, c) -> ThetaOperator:
    """Substitute theta -> theta + c in every P_i."""
    c = as_fraction(c)
    return ThetaOperator([p.shift(c) for p in L.polys])


class DOperator:
    """sum_j coeffs[j](x) D^j with rational-function coefficients, D = d/dx."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        cs = [RationalFunction.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple[RationalFunction, ...] = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def c(self, j: int) -> RationalFunction:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else RationalFunction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, DOperator):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = ", ".join(str(c) for c in self.coeffs)
        return f"{type(self).__name__}([{terms}])"

    def __add__(self, other: DOperator) -> DOperator:
        n = max(len(self.coeffs), len(other.coeffs))
        return DOperator([self.c(j) + other.c(j) for j in range(n)])

    def __sub__(self, other: DOperator) -> DOperator:
        n = max(len(self.coeffs), len(other.coeffs))
        return DOperator([self.c(j) - other.c(j) for j in range(n)])

    def left_scale(self, r) -> DOperator:
        r = RationalFunction.coerce(r)
        return DOperator([r * c for c in self.coeffs])

    def d_times(self) -> DOperator:
        """D * self (Leibniz rule)."""
        out = [RationalFunction(0)] * (len(self.coeffs) + 1)
        for j, c in enumerate(self.coeffs):
            out[j] = out[j] + c.derivative()
            out[j + 1] = out[j + 1] + c
        return DOperator(out)

    def monic(self) -> MonicOperator:
        if not self.coeffs:
            raise DomainError("zero operator has no monic form")
        lc = self.coeffs[-1]
        return MonicOperator([c / lc for c in self.coeffs[:-1]])

    def to_theta(self) -> ThetaOperator:
        """Clear denominators and x-powers; return the normal-form theta operator."""
        if not self.coeffs:
            return ThetaOperator([])
        den = common_denominator(self.coeffs)
        polys = [(c * RationalFunction(den)).num for c in self.coeffs]
        # p_j D^j = p_j x^-j (x^j D^j); shift so all x-exponents are >= 0
        e = max(j - p.valuation() for j, p in enumerate(polys) if p)
        k = len(polys) - 1
        s1 = stirling1_table(k)
        out: dict[int, Polynomial] = {}
        for j, p in enumerate(polys):
            if not p:
                continue
            # x^j D^j = sum_m s(j, m) theta^m
            tp = theta_poly([s1[j][m] if m <= j else 0 for m in range(j + 1)])
            for i, coef in enumerate(p.coeffs):
                if not coef:
                    continue
                xe = i - j + e
                out[xe] = out.get(xe, theta_poly([])) + tp * coef
        deg = max(out)
        return ThetaOperator([out.get(i, theta_poly([])) for i in range(deg + 1)]).normal_form()

    def apply(self, y):
        """Apply to a PowerSeries or LogSeries."""
        total = None
        cur = y
        order = y.order
        for j, c in enumerate(self.coeffs):
            if j:
                cur = cur.derivative()
            if c:
                term = cur * rf_series(c, order)
                total = term if total is None else total + term
        return total if total is not None else y * 0


class MonicOperator(DOperator):
    """D^k + a_{k-1} D^{k-1} + ... + a_0; ``a(i)`` gives the coefficient of D^i."""

    def __init__(self, lower: Sequence):
        super().__init__(list(lower) + [1])

    @property
    def lower(self) -> tuple[RationalFunction, ...]:
        return self.coeffs[:-1]

    def a(self, i: int) -> RationalFunction:
        if i >= self.order:
            raise DomainError(f"coefficient a_{i} of an order-{self.order} operator")
        return self.coeffs[i]


def theta_to_monic(L: ThetaOperator) -> MonicOperator:
    """Expand x^i P_i(theta) with theta^m = sum_j S(m, j) x^j D^j and divide by the lead."""
    if not L:
        raise DomainError("zero operator")
    k = L.order
    S2 = stirling2_table(k)
    coeffs = [Polynomial([]) for _ in range(k + 1)]
    for i, p in enumerate(L.polys):
        for m, pm in enumerate(p.coeffs):
            if not pm:
                continue
            for j in range(0, m + 1):
                s = S2[m][j]
                if s:
                    coeffs[j] = coeffs[j] + Polynomial.monomial(i + j, pm * s)
    lead = coeffs[k]
    return MonicOperator([RationalFunction(c, lead) for c in coeffs[:k]])


def monic_to_theta(Lm: DOperator) -> ThetaOperator:
    return Lm.to_theta()


def to_doperator(L: ThetaOperator) -> DOperator:
    """Exact D-form with polynomial coefficients (no division by the lead)."""
    k = L.order
    S2 = stirling2_table(max(k, 0))
    coeffs = [Polynomial([]) for _ in range(k + 1)]
    for i, p in enumerate(L.polys):
        for m, pm in enumerate(p.coeffs):
            if pm:
                for j in range(m + 1):
                    if S2[m][j]:
                        coeffs[j] = coeffs[j] + Polynomial.monomial(i + j, pm * S2[m][j])
    return DOperator([RationalFunction(c) for c in coeffs])


@dataclass(frozen=True)
class RightDivision:
    quotient: DOperator
    remainder: DOperator
    exact: bool
    quotient_theta: ThetaOperator | None = None


def weyl_right_divide(L, R) -> RightDivision:
    """L = Q*R + rem with ord(rem) < ord(R), computed over Q(x) in D-form."""
    Ld = to_doperator(L) if isinstance(L, ThetaOperator) else L
    Rd = to_doperator(R) if isinstance(R, ThetaOperator) else R
    if not Rd:
        raise ZeroDivisionError("right division by the zero operator")
    m, n = Ld.order, Rd.order
    if m < n:
        return RightDivision(DOperator([]), Ld, not Ld, ThetaOperator([]) if not Ld else None)
    shifted = [Rd]
    for _ in range(m - n):
        shifted.append(shifted[-1].d_times())
    rem = Ld
    q = [RationalFunction(0)] * (m - n + 1)
    lcR = Rd.coeffs[-1]
    for s in range(m - n, -1, -1):
        t = rem.c(n + s) / lcR
        if t:
            q[s] = t
            rem = rem - shifted[s].left_scale(t)
    Q = DOperator(q)
    exact = not rem
    return RightDivision(Q, rem, exact, Q.to_theta() if exact and Q else None)


def gauge_conjugate(L: DOperator, r) -> DOperator:
    """L(e * .)/e for any order, where e'/e = r."""
    r = RationalFunction.coerce(r)
    k = L.order
    E = [RationalFunction(1)]
    for _ in range(k):
        E.append(E[-1].derivative() + r * E[-1])
    out = [RationalFunction(0)] * (k + 1)
    for j, c in enumerate(L.coeffs):
        if not c:
            continue
        for i in range(j + 1):
            if E[j - i]:
                out[i] = out[i] + c * E[j - i] * comb(j, i)
    return DOperator(out)


def gauge_transform(Lm: DOperator, r) -> MonicOperator:
    """Coefficients of L(f * .)/f for f'/f = r (order-4 monic L)."""
    if not isinstance(Lm, MonicOperator):
        Lm = Lm.monic()
    if Lm.order != 4:
        raise PreconditionError("gauge_transform expects an order-4 operator")
    r = RationalFunction.coerce(r)
    a3, a2, a1, a0 = Lm.a(3), Lm.a(2), Lm.a(1), Lm.a(0)
    r1 = r.derivative()
    r2 = r1.derivative()
    r3 = r2.derivative()
    f1 = r
    f2 = r1 + r * r
    f3 = r2 + 3 * r * r1 + r ** 3
    f4 = r3 + 4 * r * r2 + 3 * r1 * r1 + 6 * r * r * r1 + r ** 4
    c3 = 4 * f1 + a3
    c2 = 6 * f2 + 3 * a3 * f1 + a2
    c1 = 4 * f3 + 3 * a3 * f2 + 2 * a2 * f1 + a1
    c0 = f4 + a3 * f3 + a2 * f2 + a1 * f1 + a0
    return MonicOperator([c0, c1, c2, c3])
