"""Difference operators, their transposition to theta-form, recursion enumeration
and the quadratic-discriminant signature used to key known recursions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import EnumerationError, SignatureError
from .exact import Polynomial
from .opalg import ThetaOperator


def n_poly(coeffs) -> Polynomial:
    return Polynomial(coeffs, "n")


class DifferenceOperator:
    """R = sum_i q_i(n) N^i acting by (R A)(n) = sum_i q_i(n) A(n+i)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        qs = [q.with_var("n") if isinstance(q, Polynomial) else n_poly([q]) for q in coeffs]
        while qs and not qs[-1]:
            qs.pop()
        if not qs:
            raise ValueError("zero difference operator")
        self.coeffs: tuple[Polynomial, ...] = tuple(qs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def q(self, i: int) -> Polynomial:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else n_poly([])

    def __eq__(self, other):
        return isinstance(other, DifferenceOperator) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"DifferenceOperator({[str(q) for q in self.coeffs]})"

    def __str__(self):
        terms = []
        for i, q in enumerate(self.coeffs):
            if q:
                terms.append(f"({q})" + ("" if i == 0 else "*N" if i == 1 else f"*N^{i}"))
        return " + ".join(terms)

    def residual(self, seq: Sequence, n: int) -> Fraction:
        """sum_i q_i(n) A_{n+i} with A_k = 0 for k < 0."""
        total = Fraction(0)
        for i, q in enumerate(self.coeffs):
            k = n + i
            if k >= 0 and q:
                total += q(n) * seq[k]
        return total


def diff_to_de(R: DifferenceOperator) -> ThetaOperator:
    """L = sum_i x^(r-i) q_i(theta - i); L(sum A_n x^n) has support below x^r."""
    r = R.order
    polys = [None] * (r + 1)
    for i, q in enumerate(R.coeffs):
        polys[r - i] = q.shift(-i).with_var("T")
    return ThetaOperator(polys)


def de_to_diff(L: ThetaOperator) -> DifferenceOperator:
    r = L.degree
    return DifferenceOperator([L.P(r - i).shift(i).with_var("n") for i in range(r + 1)])


def boundary_coefficients(R: DifferenceOperator, seq: Sequence) -> list[Fraction]:
    """Coefficients of x^0..x^(r-1) in diff_to_de(R) applied to sum seq[n] x^n."""
    r = R.order
    return [R.residual(seq, m - r) for m in range(r)]


def holonomic_enumerate(R: DifferenceOperator, initial: Sequence, N: int) -> list[Fraction]:
    """Extend A_0.. to A_N.

    With fewer than r initial values the missing ones come from the steps at
    negative n (values at negative indices are zero), as for a power-series
    solution of the transposed differential equation.
    """
    r = R.order
    seq = [Fraction(v) for v in initial]
    lead = R.q(r)
    n = len(seq) - r
    while len(seq) <= N:
        d = lead(n)
        rest = sum((R.q(i)(n) * seq[n + i] for i in range(r) if n + i >= 0), Fraction(0))
        if d == 0:
            raise EnumerationError(n)
        seq.append(-rest / d)
        n += 1
    return seq[:N + 1]


@dataclass(frozen=True)
class QuadraticSignature:
    Q0: Polynomial
    a: int
    D: int
    b_canonical: int
    stripped: tuple[tuple[Fraction, int], ...] = ()

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.a, self.D, self.b_canonical)


def quadratic_signature(Q: Polynomial) -> QuadraticSignature:
    if Q.degree != 2:
        raise SignatureError(f"expected a quadratic, got degree {Q.degree}")
    content, prim = Q.primitive()
    if prim.lc < 0:
        prim = -prim
    a, b, c = (int(prim[k]) for k in (2, 1, 0))
    return QuadraticSignature(prim.with_var("n"), a, b * b - 4 * a * c, b % (2 * a))


def superseeker_signature(src) -> QuadraticSignature:
    """Signature of the leading recursion coefficient after removing rational
    roots of multiplicity >= 4.  A bare quadratic is accepted as is."""
    if isinstance(src, ThetaOperator):
        src = de_to_diff(src)
    if isinstance(src, DifferenceOperator):
        lead = src.q(src.order)
    elif isinstance(src, Polynomial):
        lead = src.with_var("n")
    else:
        raise TypeError(f"cannot take a signature of {type(src).__name__}")
    stripped = []
    rest = lead
    for root, mult in lead.rational_roots():
        if mult >= 4:
            rest = rest // (n_poly([-root, 1]) ** mult)
            stripped.append((root, mult))
    if rest.degree != 2:
        raise SignatureError(f"residual factor has degree {rest.degree}, not 2")
    sig = quadratic_signature(rest)
    return QuadraticSignature(sig.Q0, sig.a, sig.D, sig.b_canonical, tuple(stripped))


def superseeker_lookup(sig: QuadraticSignature, rows=None) -> list[str]:
    """Ids of the stored rows whose quadratic has the same shift-invariant key."""
    if rows is None:
        from .catalog import superseeker_rows
        rows = superseeker_rows()
    out: list[str] = []
    for row in rows:
        if row.garbled or row.Q0 is None:
            continue
        if quadratic_signature(row.Q0).key == sig.key:
            out.extend(i for i in row.ids if i not in out)
    return out
