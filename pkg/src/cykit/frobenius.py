"""Frobenius bases at a MUM point, mirror maps, Yukawa couplings and instanton numbers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import PreconditionError
from .exact import LogSeries, PowerSeries, nullspace, series_reversion
from .opalg import ThetaOperator, theta_poly

DEFAULT_DEPTH = 12


@dataclass(frozen=True)
class FrobeniusBasis:
    """Solutions y_0..y_{k-1}, each exact through x^order."""

    solutions: tuple[LogSeries, ...]
    operator: ThetaOperator | None
    order: int
    family: tuple[tuple[Fraction, ...], ...] = field(default=(), repr=False)

    @property
    def y0(self) -> PowerSeries:
        return self.solutions[0].part(0)

    def truncate(self, order: int) -> FrobeniusBasis:
        if order > self.order:
            raise PreconditionError(f"basis only known to order {self.order}")
        return FrobeniusBasis(tuple(y.truncate(order) for y in self.solutions), self.operator, order,
                              self.family[:order + 1])


@dataclass(frozen=True)
class MirrorData:
    q_over_x: PowerSeries
    x_of_q: PowerSeries
    K_coeffs: tuple[Fraction, ...] = ()
    instantons: tuple[Fraction, ...] = ()
    normalizer: int = 1

    @property
    def q(self) -> PowerSeries:
        return self.q_over_x.shift(1)


def mum_check(L: ThetaOperator) -> bool:
    """True iff the indicial polynomial is a scalar multiple of theta^k."""
    if not L.polys or not L.P(0):
        return False
    p0 = L.P(0)
    k = L.order
    return p0.degree == k and all(p0[j] == 0 for j in range(k))


def _zero_multiplicity(L: ThetaOperator) -> int:
    p0 = L.P(0)
    if not p0:
        raise PreconditionError("indicial polynomial vanishes identically")
    return p0.valuation()


def _eps_taylor(p, at, k: int) -> list[Fraction]:
    """Coefficients of p(at + eps) modulo eps^k."""
    q = p.shift(at)
    return [q[j] for j in range(k)]


def _eps_mul(a: Sequence[Fraction], b: Sequence[Fraction], k: int) -> list[Fraction]:
    out = [Fraction(0)] * k
    for i, ai in enumerate(a[:k]):
        if ai:
            for j in range(k - i):
                if b[j]:
                    out[i + j] += ai * b[j]
    return out


def _eps_inverse(a: Sequence[Fraction], k: int) -> list[Fraction]:
    inv0 = 1 / a[0]
    out = [inv0]
    for m in range(1, k):
        s = sum((a[j] * out[m - j] for j in range(1, m + 1) if a[j]), Fraction(0))
        out.append(-s * inv0)
    return out


def eps_family(L: ThetaOperator, M: int, k: int | None = None) -> list[list[Fraction]]:
    """A_n(eps) mod eps^k for n = 0..M, with A_0 = 1.

    The indicial polynomial must be theta^k times a polynomial nonvanishing
    at the positive integers up to M.
    """
    if k is None:
        k = _zero_multiplicity(L)
    p0 = L.P(0)
    fam = [[Fraction(1)] + [Fraction(0)] * (k - 1)]
    for n in range(1, M + 1):
        if p0(n) == 0:
            raise PreconditionError(f"indicial polynomial vanishes at n={n}")
        acc = [Fraction(0)] * k
        for i in range(1, min(L.degree, n) + 1):
            pi = L.P(i)
            if not pi:
                continue
            term = _eps_mul(_eps_taylor(pi, n - i, k), fam[n - i], k)
            for j in range(k):
                acc[j] -= term[j]
        fam.append(_eps_mul(acc, _eps_inverse(_eps_taylor(p0, n, k), k), k))
    return fam


def basis_from_family(family: Sequence[Sequence[Fraction]], k: int, M: int,
                      operator: ThetaOperator | None = None) -> FrobeniusBasis:
    """Expand sum A_n(eps) x^(n+eps) into the log solutions y_0..y_{k-1}."""
    sols = []
    for j in range(k):
        parts = [PowerSeries([family[n][j - l] for n in range(M + 1)], M) for l in range(j + 1)]
        sols.append(LogSeries(parts))
    return FrobeniusBasis(tuple(sols), operator, M, tuple(tuple(a) for a in family[:M + 1]))


def frobenius_basis(L: ThetaOperator, M: int) -> FrobeniusBasis:
    if not mum_check(L):
        raise PreconditionError("operator is not MUM at x = 0")
    return basis_from_family(eps_family(L, M), L.order, M, L)


def log_frobenius_basis(L: ThetaOperator, M: int) -> FrobeniusBasis:
    """Frobenius solutions for indicial theta^k * Q(theta), Q(n) != 0 for n >= 1."""
    k = _zero_multiplicity(L)
    return basis_from_family(eps_family(L, M, k), k, M, L)


def _basis(src, M: int, min_solutions: int = 2) -> FrobeniusBasis:
    if isinstance(src, FrobeniusBasis):
        fb = src if src.order == M else src.truncate(M)
    elif isinstance(src, ThetaOperator):
        fb = frobenius_basis(src, M)
    elif hasattr(src, "frobenius_basis"):
        fb = src.frobenius_basis(M)
    else:
        raise TypeError(f"cannot build a Frobenius basis from {type(src).__name__}")
    if len(fb.solutions) < min_solutions:
        raise PreconditionError(f"need at least {min_solutions} Frobenius solutions")
    return fb


def _sigma(fb: FrobeniusBasis) -> PowerSeries:
    y0, y1 = fb.solutions[0], fb.solutions[1]
    return y1.part(0) / y0.part(0)


def mirror_map(src, M: int = DEFAULT_DEPTH) -> MirrorData:
    fb = _basis(src, M)
    q_over_x = _sigma(fb).exp()
    x_of_q = series_reversion(q_over_x.shift(1).truncate(M))
    return MirrorData(q_over_x, x_of_q)


def yukawa_coupling(src, M: int = DEFAULT_DEPTH) -> MirrorData:
    """K(q) = (q d/dq)^2 (y_2/y_0), recomposed in q, with instanton numbers."""
    if isinstance(src, ThetaOperator) and src.order != 4:
        raise PreconditionError("Yukawa coupling needs an order-4 operator")
    fb = _basis(src, M, 3)
    md = mirror_map(fb, M)
    sigma = _sigma(fb)
    # q d/dq = theta_x / (1 + x sigma')
    dt = 1 + sigma.theta()
    ratio = fb.solutions[2] / fb.solutions[0].part(0)
    for _ in range(2):
        ratio = ratio.theta() / dt
    if any(not ratio.part(j).is_zero() for j in range(1, ratio.J + 1)):
        raise PreconditionError("log terms survive in (q d/dq)^2 (y2/y0)")
    Kq = ratio.part(0).compose(md.x_of_q)
    coeffs = tuple(Kq[m] for m in range(1, Kq.order + 1))
    N, c = instanton_numbers(coeffs, len(coeffs))
    return MirrorData(md.q_over_x, md.x_of_q, coeffs, N, c)


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def instanton_numbers(K_coeffs: Sequence, M: int | None = None) -> tuple[tuple[Fraction, ...], int]:
    """Invert c_m = sum_{d|m} d^3 N_d; return (N_1..N_M, lcm of denominators)."""
    cs = [Fraction(c) for c in K_coeffs]
    if M is None:
        M = len(cs)
    if M > len(cs):
        raise PreconditionError(f"only {len(cs)} K-coefficients given, {M} requested")
    N = []
    for m in range(1, M + 1):
        s = sum((_mobius(m // d) * cs[d - 1] for d in range(1, m + 1) if m % d == 0), Fraction(0))
        N.append(s / m ** 3)
    c = 1
    for v in N:
        c = lcm(c, v.denominator)
    return tuple(N), c


def k_from_instantons(N: Sequence) -> tuple[Fraction, ...]:
    M = len(N)
    return tuple(sum((Fraction(d) ** 3 * N[d - 1] for d in range(1, m + 1) if m % d == 0), Fraction(0))
                 for m in range(1, M + 1))


def equivalent_k(A, B, M: int = DEFAULT_DEPTH, twist: int = 1) -> bool:
    """K_A(q) == K_B(twist * q) through q^M; twist = -1 allows the sign flip x -> -x."""
    if twist not in (1, -1):
        raise ValueError("twist must be 1 or -1")
    ka, kb = yukawa_coupling(A, M).K_coeffs[:M], yukawa_coupling(B, M).K_coeffs[:M]
    return all(a == twist ** m * b for m, (a, b) in enumerate(zip(ka, kb), start=1))


def equivalence_transformation(A, B, M: int = DEFAULT_DEPTH) -> tuple[PowerSeries, PowerSeries]:
    """Series f, g with y0_B(x) = f(x) * y0_A(g(x)) and q_A(g(x)) = q_B(x).

    Only the period and the mirror map enter; equality of Yukawa couplings is
    a separate question (see :func:`equivalent_k`).
    """
    # two guard terms: log(g/x) and the shifted mirror maps each lose one
    N = M + 2
    fa, fb = _basis(A, N, 2), _basis(B, N, 2)
    ma, mb = mirror_map(fa, N), mirror_map(fb, N)
    g = ma.x_of_q.compose(mb.q)
    y0a_g = fa.y0.compose(g)
    f = fb.y0 / y0a_g
    # y1 compatibility: y1_B = f * y1_A(g) where log g = log x + log(g/x)
    sig_a = _sigma(fa).compose(g)
    log_g_over_x = g.shift(-1).normalized().log()
    lhs = fb.solutions[1].part(0)
    rhs = f * (y0a_g * (log_g_over_x + sig_a))
    if not lhs.equal_to_order(rhs, M):
        raise PreconditionError("mirror maps are not compatible")
    return f.truncate(M), g.truncate(M)


def series_annihilator(seq: Sequence, k_max: int, d_max: int, guard: int = 10) -> ThetaOperator | None:
    """Smallest (order, then degree) operator with P_0 != 0 killing sum seq[n] x^n."""
    a = [Fraction(v) for v in seq]
    need = (k_max + 1) * (d_max + 1) + guard
    if len(a) < need:
        raise PreconditionError(f"need at least {need} terms, got {len(a)}")
    N = len(a)
    for k in range(1, k_max + 1):
        for d in range(0, d_max + 1):
            rows = []
            for m in range(N):
                row = []
                for i in range(d + 1):
                    v = a[m - i] if m >= i else Fraction(0)
                    t = m - i
                    row.extend(v * t ** j for j in range(k + 1))
                rows.append(row)
            for vec in nullspace(rows, Fraction(0), Fraction(1)):
                if any(vec[:k + 1]):
                    polys = [theta_poly(vec[i * (k + 1):(i + 1) * (k + 1)]) for i in range(d + 1)]
                    L = ThetaOperator(polys)
                    if L.order == k:
                        return L.canonical()
    return None
