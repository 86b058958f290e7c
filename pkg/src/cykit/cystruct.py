"""Calabi-Yau conditions, the Yang pullback, Wronskian lifts and the Wronskian identity suite."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import inf
from typing import Sequence

from .errors import PreconditionError, StructuralError
from .exact import (
    LogSeries,
    Polynomial,
    PowerSeries,
    RationalFunction,
    common_denominator,
    gauge_series,
    nullspace,
)
from .frobenius import frobenius_basis, mum_check
from .opalg import (
    MonicOperator,
    ThetaOperator,
    gauge_conjugate,
    gauge_transform,
    theta_poly,
    theta_shift,
    theta_to_monic,
    to_doperator,
)

F = Fraction
X = RationalFunction(Polynomial([0, 1]))
_RF0 = RationalFunction(0)
_RF1 = RationalFunction(1)


def _xp(k: int) -> RationalFunction:
    return RationalFunction.x_power(k)


def _d(r: RationalFunction, n: int = 1) -> RationalFunction:
    for _ in range(n):
        r = r.derivative()
    return r


def _require_order(L: ThetaOperator, k: int):
    if L.order != k:
        raise PreconditionError(f"expected an order-{k} operator, got order {L.order}")


def a_coefficients(L: ThetaOperator) -> tuple[RationalFunction, ...]:
    """(a3, a2, a1, a0) of the monic d/dx form of an order-4 operator."""
    _require_order(L, 4)
    m = theta_to_monic(L)
    return tuple(m.a(i) for i in (3, 2, 1, 0))


def b_coefficients(L: ThetaOperator) -> tuple[RationalFunction, ...]:
    """(b4, b3, b2, b1, b0) of the monic d/dx form of an order-5 operator."""
    _require_order(L, 5)
    m = theta_to_monic(L)
    return tuple(m.a(i) for i in (4, 3, 2, 1, 0))


def cy2_rhs(a3, a2) -> RationalFunction:
    """The value of a1 forced by the C-Y2 condition."""
    return (F(1, 2) * a2 * a3 - F(1, 8) * a3 ** 3 + _d(a2)
            - F(3, 4) * a3 * _d(a3) - F(1, 2) * _d(a3, 2))


def cy2_check(L: ThetaOperator) -> bool:
    a3, a2, a1, _ = a_coefficients(L)
    return a1 == cy2_rhs(a3, a2)


def u_relation(b4, b3, b2) -> RationalFunction:
    """The fifth-order condition U (zero for operators coming from C-Y2 quartics)."""
    return (-b2 + F(3, 2) * _d(b3) + F(3, 5) * b3 * b4 - _d(b4, 2)
            - F(6, 5) * b4 * _d(b4) - F(4, 25) * b4 ** 3)


def cy5_check(L: ThetaOperator) -> bool:
    b4, b3, b2, _, _ = b_coefficients(L)
    return not u_relation(b4, b3, b2)


def _a2_rest(b4, b3):
    return (-F(3, 2) * _xp(-2) + F(3, 5) * _xp(-1) * b4 - F(7, 50) * b4 ** 2 - F(2, 5) * _d(b4))


def _a1_rest(b4, b3):
    return (F(3, 2) * _xp(-3) + F(1, 2) * _xp(-1) * b3 - _d(b3) - F(1, 2) * b3 * b4
            - F(3, 10) * _xp(-2) * b4 - F(7, 50) * _xp(-1) * b4 ** 2 + F(31, 250) * b4 ** 3
            - F(2, 5) * _xp(-1) * _d(b4) + F(18, 25) * b4 * _d(b4) + F(2, 5) * _d(b4, 2))


def _a0_rest(b4, b3, b2):
    b4p, b4pp, b4ppp = _d(b4), _d(b4, 2), _d(b4, 3)
    b3p, b3pp = _d(b3), _d(b3, 2)
    xi = _xp(-1)
    return (-F(15, 16) * _xp(-4) + F(1, 4) * xi * b2 + F(1, 2) * _d(b2) + F(3, 20) * b2 * b4
            - F(1, 8) * _xp(-2) * b3 + F(1, 16) * b3 ** 2 - F(1, 8) * xi * b3p - F(3, 8) * b3pp
            - F(1, 10) * xi * b3 * b4
            - F(21, 200) * b3 * b4 ** 2 - F(7, 20) * b3 * b4p - F(13, 40) * b3p * b4
            + F(3, 20) * _xp(-3) * b4 + F(7, 200) * _xp(-2) * b4 ** 2
            + F(11, 500) * xi * b4 ** 3 + F(221, 10000) * b4 ** 4 + F(1, 10) * _xp(-2) * b4p
            - F(1, 20) * xi * b4pp + F(1, 10) * b4ppp
            + F(3, 50) * xi * b4 * b4p + F(29, 100) * b4 * b4pp + F(33, 100) * b4p ** 2
            + F(69, 250) * b4 ** 2 * b4p)


def a_from_b(b: Sequence) -> tuple[RationalFunction, ...]:
    """(a3, a2, a1, a0) from (b4, b3, b2, b1[, b0]); b0 does not enter."""
    b4, b3, b2, b1 = (RationalFunction.coerce(v) for v in b[:4])
    a3 = 2 * _xp(-1) + F(2, 5) * b4
    a2 = F(1, 2) * b3 + _a2_rest(b4, b3)
    a1 = b2 + _a1_rest(b4, b3)
    a0 = -F(1, 4) * b1 + _a0_rest(b4, b3, b2)
    return a3, a2, a1, a0


def b_from_a(a: Sequence) -> tuple[RationalFunction, ...]:
    """(b4, b3, b2, b1) by back-substitution in the a-from-b relations."""
    a3, a2, a1, a0 = (RationalFunction.coerce(v) for v in a[:4])
    b4 = F(5, 2) * (a3 - 2 * _xp(-1))
    b3 = 2 * (a2 - _a2_rest(b4, None))
    b2 = a1 - _a1_rest(b4, b3)
    b1 = -4 * (a0 - _a0_rest(b4, b3, b2))
    return b4, b3, b2, b1


def pullback_coefficients(b: Sequence) -> tuple[RationalFunction, ...]:
    """(c3, c2, c1, c0) of the Yang pullback before the x^(5/2) shift."""
    b4, b3, b2, b1 = (RationalFunction.coerce(v) for v in b[:4])
    b4p = _d(b4)
    b3p = _d(b3)
    c3 = F(8, 5) * b4
    c2 = F(1, 2) * b3 + F(7, 5) * b4p + F(19, 25) * b4 ** 2
    c1 = -F(3, 5) * b2 + F(7, 5) * b3p + F(19, 25) * b3 * b4
    c0 = (-F(1, 4) * b1 + F(1, 10) * _d(b2) + F(1, 25) * b2 * b4 + F(9, 40) * _d(b3, 2)
          + F(1, 16) * b3 ** 2 + F(1, 25) * b3 * b4p + F(23, 100) * b3p * b4 + F(9, 250) * b3 * b4 ** 2)
    return c3, c2, c1, c0


def yang_pullback(L: ThetaOperator) -> ThetaOperator:
    """Fourth-order operator for x^3 * y0 * exp(-(3/10) int b4 dx)."""
    _require_order(L, 5)
    if not mum_check(L):
        raise PreconditionError("yang_pullback needs a MUM operator")
    b4, b3, b2, b1, _ = b_coefficients(L)
    if u_relation(b4, b3, b2):
        raise PreconditionError("fifth-order operator violates the U condition")
    c3, c2, c1, c0 = pullback_coefficients((b4, b3, b2, b1))
    return theta_shift(MonicOperator([c0, c1, c2, c3]).to_theta(), F(-5, 2)).normal_form()


def yang_pullback_via_gauge(L: ThetaOperator) -> ThetaOperator:
    """Same pullback along a_from_b, the gauge f'/f = -1/(2x) + (3/10) b4, and the shift."""
    _require_order(L, 5)
    b = b_coefficients(L)
    a3, a2, a1, a0 = a_from_b(b)
    r = -F(1, 2) * _xp(-1) + F(3, 10) * b[0]
    return theta_shift(gauge_transform(MonicOperator([a0, a1, a2, a3]), r).to_theta(), F(-5, 2)).normal_form()


def _theta_rf(r: RationalFunction) -> RationalFunction:
    return X * r.derivative()


def _companion_theta(L: ThetaOperator) -> list[list[RationalFunction]]:
    """Matrix C with theta (y, theta y, ...) = C (y, theta y, ...)."""
    k = L.order
    cols = [Polynomial([p[j] for p in L.polys]) for j in range(k + 1)]
    lead = cols[k]
    C = [[_RF0] * k for _ in range(k)]
    for s in range(k - 1):
        C[s][s + 1] = _RF1
    for t in range(k):
        C[k - 1][t] = -RationalFunction(cols[t], lead)
    return C


def _exterior_matrix(C, p: int):
    """Action of theta on the Plucker coordinates of the p-th exterior power."""
    k = len(C)
    subsets = list(combinations(range(k), p))
    index = {S: i for i, S in enumerate(subsets)}
    n = len(subsets)
    M = [[_RF0] * n for _ in range(n)]
    for i, S in enumerate(subsets):
        for pos, s in enumerate(S):
            for t in range(k):
                c = C[s][t]
                if not c or (t in S and t != s):
                    continue
                row = list(S)
                row[pos] = t
                # sort with sign
                sign = 1
                arr = row[:]
                for a in range(len(arr)):
                    for b_ in range(len(arr) - 1 - a):
                        if arr[b_] > arr[b_ + 1]:
                            arr[b_], arr[b_ + 1] = arr[b_ + 1], arr[b_]
                            sign = -sign
                j = index[tuple(arr)]
                M[i][j] = M[i][j] + (c if sign > 0 else -c)
    return subsets, M


def _cyclic_annihilator(C, p: int, start: Sequence[int], max_order: int) -> ThetaOperator:
    subsets, M = _exterior_matrix(C, p)
    n = len(subsets)
    v = [_RF0] * n
    v[subsets.index(tuple(start))] = _RF1
    vecs = [v]
    for m in range(1, max_order + 1):
        prev = vecs[-1]
        nxt = [_theta_rf(prev[j]) for j in range(n)]
        for i in range(n):
            if prev[i]:
                for j in range(n):
                    if M[i][j]:
                        nxt[j] = nxt[j] + prev[i] * M[i][j]
        vecs.append(nxt)
        rows = [[vecs[c][r] for c in range(m + 1)] for r in range(n)]
        ns = nullspace(rows, _RF0, _RF1)
        if ns:
            rel = ns[0]
            lead = rel[m]
            rel = [c / lead for c in rel]
            den = common_denominator(rel)
            polys = [(c * RationalFunction(den)).num for c in rel]
            deg = max(q.degree for q in polys)
            ps = [theta_poly([polys[j][i] for j in range(m + 1)]) for i in range(deg + 1)]
            return ThetaOperator(ps).normal_form()
    raise StructuralError(f"no relation up to order {max_order} in the exterior power")


def exterior_square_operator(L: ThetaOperator) -> ThetaOperator:
    """Fifth-order operator annihilating x*W(y_i, y_j) for a C-Y2 quartic."""
    _require_order(L, 4)
    if not mum_check(L):
        raise PreconditionError("wronskian_lift needs a MUM operator")
    if not cy2_check(L):
        raise PreconditionError("wronskian_lift needs the C-Y2 condition")
    R = _cyclic_annihilator(_companion_theta(L), 2, (0, 1), 6)
    if R.order != 5:
        raise StructuralError(f"exterior square gave order {R.order}, expected 5")
    return R


def wronskian_lift(L: ThetaOperator) -> ThetaOperator:
    """The fifth-order operator whose Yang pullback is L.

    Its solutions are x^(-3/2) exp((3/20) int b4' dx) * x W(y_i, y_j), with b4'
    taken from the exterior square; for L = theta^4 nothing changes.
    """
    R = exterior_square_operator(L)
    b4 = b_coefficients(R)[0]
    r = F(3, 2) * _xp(-1) - F(3, 20) * b4
    return gauge_conjugate(to_doperator(R), r).to_theta()


def exterior_power_operator(L: ThetaOperator, indices: Sequence[int] = (0, 1, 2)) -> ThetaOperator:
    """Annihilator of x^3 * W(y_i, y_j, y_k) (the same for every index triple)."""
    _require_order(L, 4)
    idx = tuple(indices)
    if len(idx) != 3 or len(set(idx)) != 3 or not all(0 <= i < 4 for i in idx):
        raise PreconditionError(f"need three distinct solution indices in 0..3, got {indices!r}")
    if not mum_check(L):
        raise PreconditionError("exterior_power_operator needs a MUM operator")
    if not cy2_check(L):
        raise PreconditionError("exterior_power_operator needs the C-Y2 condition")
    return _cyclic_annihilator(_companion_theta(L), 3, (0, 1, 2), 4)


@dataclass(frozen=True)
class IdentityReport:
    ident: str
    passed: bool
    residual_valuation: float

    def __str__(self):
        v = "inf" if self.residual_valuation == inf else str(self.residual_valuation)
        return f"{self.ident}: {'pass' if self.passed else 'FAIL'} (residual valuation {v})"


def _wr(us: Sequence[LogSeries]) -> LogSeries:
    """Ordinary d/dx Wronskian determinant."""
    n = len(us)
    rows = [list(us)]
    for _ in range(n - 1):
        rows.append([u.derivative() for u in rows[-1]])
    return _det(rows)


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def _residual_valuation(d: LogSeries, M: int) -> float:
    if d.order < M:
        raise PreconditionError(f"residual only known to order {d.order} < {M}")
    best = inf
    for p in d.parts:
        for k, c in p.items():
            if c and k <= M:
                best = min(best, k)
                break
    return best


IDENTITY_IDS = (
    [f"W2-{i:02d}" for i in range(1, 11)] + [f"P3-{i:02d}" for i in range(1, 5)]
    + [f"W3-{i:02d}" for i in range(1, 11)] + [f"W4-{i:02d}" for i in range(1, 6)]
    + ["W2-ALT", "U-SQUARE", "CY2-EQUIV"]
)


def identity_sides(L: ThetaOperator, M: int, guard: int = 8) -> dict[str, tuple[LogSeries, LogSeries]]:
    """Left and right sides of every Wronskian identity, exact beyond x^M."""
    if not mum_check(L):
        raise PreconditionError("identity checks need a MUM operator")
    _require_order(L, 4)
    N = M + guard
    ys = list(frobenius_basis(L, N).solutions)
    y0, y1, y2, y3 = ys
    xs = PowerSeries([1], N).shift(1)
    half = F(1, 2)
    w = [xs * _wr([y0, y1]), xs * _wr([y0, y2]), xs * _wr([y0, y3]),
         (xs * _wr([y1, y3])) * half, (xs * _wr([y2, y3])) * half]
    a3 = a_coefficients(L)[0]
    g = gauge_series(a3, -half, N)
    if g.rho.denominator != 1:
        raise PreconditionError("gauge exponent is not integral")

    def fpow(k: int) -> PowerSeries:
        return (g ** k).as_series()

    x2f, x3f2, x3f3 = fpow(1).shift(2), fpow(2).shift(3), fpow(3).shift(3)
    q = F(1, 4)
    sides: dict[str, tuple[LogSeries, LogSeries]] = {}
    w2_pairs = [((0, 1), 1, y0 * y0), ((0, 2), 1, y0 * y1), ((0, 3), half, y1 * y1),
                ((0, 4), half, y1 * y2 - y0 * y3), ((1, 2), 1, y0 * y2), ((1, 3), half, y1 * y2 + y0 * y3),
                ((1, 4), half, y2 * y2), ((2, 3), half, y1 * y3), ((2, 4), half, y2 * y3), ((3, 4), q, y3 * y3)]
    for n, ((i, j), c, rhs) in enumerate(w2_pairs, 1):
        sides[f"W2-{n:02d}"] = (_wr([w[i], w[j]]), rhs * x2f * c)
    fy = fpow(1)
    for n, (trip, rhs) in enumerate([((0, 1, 2), y0), ((0, 1, 3), y1), ((0, 2, 3), y2), ((1, 2, 3), y3)], 1):
        sides[f"P3-{n:02d}"] = (_wr([ys[t] for t in trip]), rhs * fy)
    w3 = [((0, 1, 2), 1, y0 * y0), ((0, 1, 3), 1, y0 * y1), ((0, 1, 4), 1, y0 * y2),
          ((0, 2, 3), half, y1 * y1), ((0, 2, 4), half, y0 * y3 + y1 * y2), ((0, 3, 4), half, y1 * y3),
          ((1, 2, 3), half, y1 * y2 - y0 * y3), ((1, 2, 4), half, y2 * y2), ((1, 3, 4), half, y2 * y3),
          ((2, 3, 4), q, y3 * y3)]
    for n, (trip, c, rhs) in enumerate(w3, 1):
        sides[f"W3-{n:02d}"] = (_wr([w[t] for t in trip]), rhs * x3f2 * c)
    for n, omit in enumerate((4, 3, 2, 1, 0), 1):
        quad = [w[t] for t in range(5) if t != omit]
        sides[f"W4-{n:02d}"] = (_wr(quad), w[n - 1] * x3f3)
    sides["W2-ALT"] = (xs * _wr([y0, y3]), xs * _wr([y1, y2]))
    sides["U-SQUARE"] = (_wr([w[0], w[1]]), (y0 * y0) * x2f)
    # d^2/dt^2 (y2/y0) = f / (y0^2 (dt/dx)^3), t = y1/y0
    y0s = y0.part(0)
    tp = w[0].part(0) / (y0s * y0s).shift(1)
    inv_tp = tp.inverse()
    r = y2 / y0s
    lhs = (r.derivative() * inv_tp).derivative() * inv_tp
    rhs = LogSeries.of(fy / ((y0s * y0s) * tp * tp * tp))
    sides["CY2-EQUIV"] = (lhs, rhs)
    return sides


def verify_identities(L: ThetaOperator, M: int = 20) -> list[IdentityReport]:
    sides = identity_sides(L, M)
    out = []
    for ident in IDENTITY_IDS:
        lhs, rhs = sides[ident]
        v = _residual_valuation(lhs - rhs, M)
        out.append(IdentityReport(ident, v > M, v))
    return out
