"""Operator families: Hadamard products of second-order operators, binomial
lifts of third-order ones, hypergeometric quintics with their closed-form
fourth-order pullbacks, and explicit coefficient formulas for cross-checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from math import comb, factorial, inf
from typing import Sequence

from .cystruct import IdentityReport
from .diffops import DifferenceOperator, n_poly
from .errors import DomainError, PreconditionError
from .exact import Polynomial, PowerSeries
from .exact.series import multinomial_square_sum
from .frobenius import FrobeniusBasis, _eps_mul, basis_from_family, eps_family, frobenius_basis
from .opalg import T, ThetaOperator, theta_poly

F = Fraction
HALF = F(1, 2)


def _as_poly(p) -> Polynomial:
    if isinstance(p, Polynomial):
        return p.with_var("T")
    return theta_poly(p)


# second-order building blocks

@dataclass(frozen=True)
class HyperSecond:
    name: str
    Q: object

    def operator(self) -> ThetaOperator:
        return ThetaOperator([T ** 2, -self.Q])

    def sequence(self, N: int) -> list[Fraction]:
        return _second_order_sequence(self.operator(), N)


@dataclass(frozen=True)
class DegreeTwoSecond:
    name: str
    a: Fraction
    b: Fraction
    c: Fraction

    @property
    def P(self):
        return theta_poly([self.b, self.a, self.a])

    def operator(self) -> ThetaOperator:
        return ThetaOperator([T ** 2, -self.P, -self.c * (T + 1) ** 2])

    def sequence(self, N: int) -> list[Fraction]:
        return _second_order_sequence(self.operator(), N)


HYPER_SECOND = {
    "A": HyperSecond("A", 4 * (2 * T + 1) ** 2),
    "B": HyperSecond("B", 3 * (3 * T + 1) * (3 * T + 2)),
    "C": HyperSecond("C", 4 * (4 * T + 1) * (4 * T + 3)),
    "D": HyperSecond("D", 12 * (6 * T + 1) * (6 * T + 5)),
}

DEGREE_TWO = {
    name: DegreeTwoSecond(name, F(a), F(b), F(c))
    for name, a, b, c in [
        ("a", 7, 2, 8), ("b", 11, 3, 1), ("c", 10, 3, -9), ("d", 12, 4, -32),
        ("e", 32, 12, -256), ("f", 9, 3, -27), ("g", 17, 6, -72), ("h", 54, 21, -729),
        ("i", 128, 52, -4096), ("j", 864, 372, -186624),
    ]
}

# products removed from the count: trivial K(q), and one equivalent to a degree-1 operator
EXCLUDED_PRODUCTS = {("C", "h"): "trivial Yukawa coupling", ("C", "e"): "equivalent to a degree-1 operator"}

# big-table cross references of the 4 x 10 product grid, stored verbatim
PRODUCT_GRID = {
    "a": ("45", "15", "68", "62"), "b": ("25", "24", "51", "63"), "c": ("58", "70", "69", "64"),
    "d": ("36", "48", "38", "65"), "e": ("111=10**~10*", "110", "30~3", "112"),
    "f": ("133", "134", "135", "136"), "g": ("137", "138", "139", "140"),
    "h": ("141=8**=8*", "142", "K(q)=1", "143"), "i": ("7**~7*", "B*(i)", "C*(i)~6*", "D*(i)"),
    "j": ("9**~9*", "B*(j)", "C*(j)", "D*(j)"),
}


def _second_order_sequence(L: ThetaOperator, N: int) -> list[Fraction]:
    return [row[0] for row in eps_family(L, N, 1)]


def hadamard_2x2(P, c, Q) -> ThetaOperator:
    """(theta^2 - x P - c x^2 (theta+1)^2) * (theta^2 - x Q)."""
    P, Q = _as_poly(P), _as_poly(Q)
    if P.degree > 2:
        raise DomainError(f"P must have degree <= 2, got {P.degree}")
    if Q.degree != 2:
        raise DomainError(f"Q must have degree 2, got {Q.degree}")
    c = F(c)
    return ThetaOperator([T ** 4, -(P * Q), -c * Q * Q.shift(1)]).canonical()


def hadamard_product(left: str, right: str) -> ThetaOperator:
    """Closed-form product of a hypergeometric block (A-D) with one of (a)-(j)."""
    hs, dt = HYPER_SECOND.get(left.upper()), DEGREE_TWO.get(right.lower().strip("()"))
    if hs is None or dt is None:
        hs, dt = HYPER_SECOND.get(right.upper()), DEGREE_TWO.get(left.lower().strip("()"))
    if hs is None or dt is None:
        raise DomainError(f"no closed-form Hadamard product for {left!r} * {right!r}")
    return hadamard_2x2(dt.P, dt.c, hs.Q)


def retained_products() -> list[tuple[str, str]]:
    return [(h, d) for h, d in cartesian("ABCD", "abcdefghij") if (h, d) not in EXCLUDED_PRODUCTS]


def hadamard_series(A: PowerSeries, B: PowerSeries) -> PowerSeries:
    if A.order != B.order:
        raise PreconditionError("Hadamard product needs a shared truncation order")
    return A.hadamard(B)


class HadamardFamily:
    """Hadamard product of two MUM operators, known through its Frobenius family.

    The indicial families A_n(eps), B_n(eps) multiply termwise; for two
    second-order factors this yields the fourth-order Frobenius basis.
    """

    def __init__(self, *factors: ThetaOperator):
        if len(factors) < 2:
            raise PreconditionError("need at least two factors")
        self.factors = factors
        self.k = sum(L.order for L in factors)

    def frobenius_basis(self, M: int) -> FrobeniusBasis:
        fams = [eps_family(L, M, self.k) for L in self.factors]
        fam = []
        for n in range(M + 1):
            acc = fams[0][n]
            for other in fams[1:]:
                acc = _eps_mul(acc, other[n], self.k)
            fam.append(acc)
        return basis_from_family(fam, self.k, M)

    def sequence(self, N: int) -> list[Fraction]:
        return [row[0] for row in self.frobenius_basis(N).family]


def second_order(name: str) -> ThetaOperator:
    key = name.strip("()")
    if key in HYPER_SECOND:
        return HYPER_SECOND[key].operator()
    if key in DEGREE_TWO:
        return DEGREE_TWO[key].operator()
    raise DomainError(f"unknown second-order operator {name!r}")


# binomial lifts of third-order operators

BINOM_LIFT = {
    "alpha": ("16", 4 * (5 * T ** 2 + 5 * T + 2), 256),
    "gamma": ("29", 16 * (2 * T ** 2 + 2 * T + 1), 1024),
    "delta": ("41", 2 * (7 * T ** 2 + 7 * T + 3), 324),
    "epsilon": ("42", 8 * (3 * T ** 2 + 3 * T + 1), 64),
    "zeta": ("185", 6 * (3 * T ** 2 + 3 * T + 1), -108),
    "eta": ("184", 2 * (11 * T ** 2 + 11 * T + 5), 500),
    "iota": ("4*", 6 * (9 * T ** 2 + 9 * T + 5), 2916),
    "kappa": ("13*", 48 * (18 * T ** 2 + 18 * T + 13), 746496),
}


def binom_lift_third(P, c) -> ThetaOperator:
    P = _as_poly(P)
    if P.degree != 2:
        raise DomainError(f"P must have degree 2, got {P.degree}")
    c = F(c)
    return ThetaOperator([T ** 4, -((2 * T + 1) ** 2) * P,
                          c * (T + 1) ** 2 * (2 * T + 1) * (2 * T + 3)]).canonical()


# hypergeometric quintics and their pullbacks

@dataclass(frozen=True)
class HypergeometricQuinticSpec:
    a: tuple[Fraction, Fraction, Fraction, Fraction, Fraction]
    c: Fraction

    def __post_init__(self):
        a1, a2, a3, a4, a5 = self.a
        if a1 != HALF or a2 + a3 != 1 or a4 + a5 != 1:
            raise DomainError(f"parameters {self.a} violate a1 = 1/2, a2 + a3 = 1, a4 + a5 = 1")

    @classmethod
    def from_a(cls, a2, a4, c) -> HypergeometricQuinticSpec:
        a2, a4 = F(a2), F(a4)
        return cls((HALF, a2, 1 - a2, a4, 1 - a4), F(c))

    @classmethod
    def from_alpha_beta(cls, alpha, beta, c) -> HypergeometricQuinticSpec:
        return cls.from_a(HALF + F(alpha), HALF + F(beta), c)

    @property
    def alpha(self) -> Fraction:
        return self.a[1] - HALF

    @property
    def beta(self) -> Fraction:
        return self.a[3] - HALF


# name: (a2, a4, c, alpha, beta) as tabulated
TILDE_ROWS = {
    1: ("1/5", "2/5", 4 * 5 ** 5, "-3/10", "-1/10"),
    2: ("1/10", "3/10", 4 * 8 * 10 ** 5, "-2/5", "-1/5"),
    3: ("1/2", "1/2", 4 * 256, "0", "0"),
    4: ("1/3", "1/3", 4 * 3 ** 6, "-1/6", "-1/6"),
    5: ("1/2", "1/3", 4 * 432, "0", "-1/6"),
    6: ("1/2", "1/4", 4 * 2 ** 10, "0", "-1/4"),
    7: ("1/8", "3/8", 4 * 2 ** 16, "-3/8", "-1/8"),
    8: ("1/6", "1/3", 4 * 11664, "-1/3", "-1/6"),
    9: ("1/12", "5/12", 4 * 12 ** 6, "-5/12", "-1/12"),
    10: ("1/4", "1/4", 4 * 2 ** 12, "-1/4", "-1/4"),
    11: ("1/4", "1/3", 4 * 12 ** 3, "-1/4", "-1/6"),
    12: ("1/6", "1/4", 4 * 2 ** 10 * 3 ** 3, "-1/3", "-1/4"),
    13: ("1/6", "1/6", 4 * 2 ** 8 * 3 ** 6, "-1/3", "-1/3"),
    14: ("1/2", "1/6", 4 * 2 ** 8 * 3 ** 3, "0", "-1/3"),
}


def tilde_spec(m: int) -> HypergeometricQuinticSpec:
    a2, a4, c, alpha, beta = TILDE_ROWS[m]
    spec = HypergeometricQuinticSpec.from_a(F(a2), F(a4), c)
    if spec.alpha != F(alpha) or spec.beta != F(beta):
        raise DomainError(f"row {m}: alpha/beta inconsistent with a2/a4")
    return spec


def hypergeometric_quintic(spec: HypergeometricQuinticSpec) -> ThetaOperator:
    prod = theta_poly([1])
    for aj in spec.a:
        prod = prod * (T + aj)
    return ThetaOperator([T ** 5, -spec.c * prod]).canonical()


def pullback_closed_form(alpha, beta, c) -> ThetaOperator:
    alpha, beta, c = F(alpha), F(beta), F(c)
    s = T + HALF
    bracket = (2 * s ** 4 + HALF * (F(7, 2) - alpha ** 2 - beta ** 2) * s ** 2
               + F(1, 16) - F(1, 4) * (alpha ** 2 + F(1, 4)) * (beta ** 2 + F(1, 4)))
    u, v = (alpha + beta) / 2, (alpha - beta) / 2
    top = (T + 1 + u) * (T + 1 - u) * (T + 1 + v) * (T + 1 - v)
    return ThetaOperator([T ** 4, -c * bracket, c * c * top]).canonical()


def _poch(a: Fraction, n: int) -> Fraction:
    out = F(1)
    for i in range(n):
        out *= a + i
    return out


def _harmonic_shift(a: Fraction, n: int) -> Fraction:
    return sum((1 / (a + i) for i in range(n)), F(0))


def _hyper_terms(spec: HypergeometricQuinticSpec, N: int):
    """(coefficient, log-derivative bracket) of the quintic's Frobenius data for n <= N."""
    out = []
    H = F(0)
    for n in range(N + 1):
        if n:
            H += F(1, n)
        coef = F(1)
        for aj in spec.a:
            coef *= _poch(aj, n)
        coef /= F(factorial(n)) ** 5
        h = -5 * H + sum(_harmonic_shift(aj, n) for aj in spec.a)
        out.append((coef, h))
    return out


def proposition_w1(spec: HypergeometricQuinticSpec, M: int) -> tuple[PowerSeries, PowerSeries]:
    """Closed forms of w0 and of the non-log part of w1 for the quintic."""
    terms = _hyper_terms(spec, M)
    w0 = PowerSeries([coef * spec.c ** n for n, (coef, _) in enumerate(terms)], M)
    w1 = PowerSeries([coef * h * spec.c ** n for n, (coef, h) in enumerate(terms)], M)
    return w0, w1


def proposition_w1_check(spec: HypergeometricQuinticSpec, M: int) -> IdentityReport:
    fb = frobenius_basis(hypergeometric_quintic(spec), M)
    w0, w1 = proposition_w1(spec, M)
    d0 = fb.y0 - w0
    d1 = fb.solutions[1].part(0) - w1
    ok = fb.solutions[1].part(1).equal_to_order(fb.y0, M) and d0.is_zero() and d1.is_zero()
    return IdentityReport("QUINTIC-W1", ok, _first_nonzero(d0, d1))


def _first_nonzero(*series: PowerSeries) -> float:
    best = inf
    for s in series:
        v = s.valuation()
        if v is not None:
            best = min(best, v)
    return best


def theorem_series(spec: HypergeometricQuinticSpec, M: int) -> PowerSeries:
    """sum_n (cx)^n sum_k t_k t_(n-k) [1 + (2k - n) h_k]."""
    terms = _hyper_terms(spec, M)
    coeffs = []
    for n in range(M + 1):
        s = F(0)
        for k in range(n + 1):
            ck, hk = terms[k]
            s += ck * terms[n - k][0] * (1 + (2 * k - n) * hk)
        coeffs.append(s * spec.c ** n)
    return PowerSeries(coeffs, M)


def theorem_solution_check(alpha, beta, c, M: int = 12) -> IdentityReport:
    """(1 - cx) y0^2 against the explicit double sum, y0 from the closed-form pullback."""
    spec = HypergeometricQuinticSpec.from_alpha_beta(alpha, beta, c)
    y0 = frobenius_basis(pullback_closed_form(alpha, beta, c), M).y0
    lhs = PowerSeries([1, -spec.c], M) * y0 * y0
    diff = lhs - theorem_series(spec, M)
    return IdentityReport("THEOREM-Y0", diff.is_zero(), _first_nonzero(diff))


# Hadamard squares of (a)-(j)

def hadamard_square_recursion(a, b, c) -> DifferenceOperator:
    a, b, c = F(a), F(b), F(c)
    n = n_poly([0, 1])
    U = a * (n + 1) ** 2 + a * (n + 1) + b
    U1 = U.shift(1)
    inner = U * U1 + c * (n + 2) ** 4
    return DifferenceOperator([c ** 3 * U1 * (n + 1) ** 4, -c * U * inner, -U1 * inner, U * (n + 3) ** 4])


# explicit coefficient formulas

def binom(r, k: int) -> Fraction:
    """Generalized binomial coefficient C(r, k) for rational r."""
    if k < 0:
        return F(0)
    r = F(r)
    out = F(1)
    for i in range(k):
        out = out * (r - i) / (i + 1)
    return out


def _a_130(n):
    return multinomial_square_sum(6, n)


def _a_34(n):
    return multinomial_square_sum(5, n)


def _a_dj(n):
    s = sum(((-1) ** k * binom(F(-5, 6), k) * binom(F(-1, 6), n - k) ** 2 for k in range(n + 1)), F(0))
    return F(factorial(6 * n), factorial(3 * n) * factorial(2 * n) * factorial(n)) * 432 ** n * s


def _a_j(n):
    return 432 ** n * sum(((-1) ** k * binom(F(-5, 6), k) * binom(F(-1, 6), n - k) ** 2
                           for k in range(n + 1)), F(0))


def _a_145(n):
    s = sum(((-1) ** (n + k) * comb(n, k) * binom(F(-1, 3), k) * binom(F(-2, 3), k) / comb(n + k, n)
             for k in range(n + 1)), F(0))
    return 27 ** n * comb(2 * n, n) ** 2 * comb(3 * n, n) * s


def _a_155(n):
    s = sum(((-1) ** (n + k) * comb(n, k) * binom(F(-1, 4), k) * binom(F(-3, 4), k) / comb(n + k, n)
             for k in range(n + 1)), F(0))
    return 64 ** n * comb(2 * n, n) ** 2 * comb(4 * n, 2 * n) * s


def _a_165(n):
    s = sum(((-1) ** (n + k) * comb(n, k) * comb(3 * k, n) * binom(F(-1, 3), k) * binom(F(-2, 3), k)
             for k in range(n + 1)), F(0))
    return 27 ** n * comb(2 * n, n) * s


def _a_214(n):
    s = sum((-1) ** (i + j) * comb(n, i) * comb(n, j) * comb(i + j, j) ** 3
            for i in range(n + 1) for j in range(n + 1))
    return comb(2 * n, n) * s


def _a_227(n):
    s = sum(((-1) ** k * comb(n, k) * comb(3 * k, n) * binom(F(-1, 6), k) * binom(F(-5, 6), k)
             for k in range(n + 1)), F(0))
    return 432 ** n * comb(2 * n, n) * s


def _a_228(n):
    s = sum(((-1) ** (n + k) * comb(n, k) * comb(3 * k, n) * binom(F(-1, 4), k) * binom(F(-3, 4), k)
             for k in range(n + 1)), F(0))
    return 64 ** n * comb(2 * n, n) * s


def _a_232(n):
    return comb(2 * n, n) ** 2 * sum(comb(n, k) ** 2 * comb(3 * n, n + k) for k in range(n + 1))


_ORACLES = {
    "130": _a_130, "34": _a_34, "D*j": _a_dj, "j": _a_j, "145": _a_145, "155": _a_155,
    "165": _a_165, "214": _a_214, "227": _a_227, "228": _a_228, "232": _a_232,
}


def oracle_names() -> list[str]:
    return sorted(_ORACLES)


def sequence_oracle(name: str, N: int) -> list[Fraction]:
    key = name.lstrip("#")
    fn = _ORACLES.get(key)
    if fn is None:
        raise DomainError(f"no coefficient formula named {name!r}; known: {', '.join(oracle_names())}")
    return [F(fn(n)) for n in range(N + 1)]
