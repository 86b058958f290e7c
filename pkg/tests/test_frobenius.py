from fractions import Fraction as F
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from cykit.errors import PreconditionError
from cykit.frobenius import (
    equivalence_transformation,
    equivalent_k,
    frobenius_basis,
    instanton_numbers,
    k_from_instantons,
    mirror_map,
    mum_check,
    series_annihilator,
    yukawa_coupling,
)
from cykit.opalg import T, ThetaOperator, theta_poly
from cykit.text import parse_operator

QUINTIC = ThetaOperator([T ** 4, -5 * (5 * T + 1) * (5 * T + 2) * (5 * T + 3) * (5 * T + 4)])


def H(n):
    return sum((F(1, k) for k in range(1, n + 1)), F(0))


def quintic_a(n):
    return F(factorial(5 * n), factorial(n) ** 5)


def test_mum_check():
    assert mum_check(QUINTIC)
    assert mum_check(ThetaOperator([T ** 2]))
    assert not mum_check(ThetaOperator([T ** 2 - 1, T]))
    assert not mum_check(ThetaOperator([T * (T - 1)]))


def test_y0_and_y1_against_closed_forms():
    M = 8
    fb = frobenius_basis(QUINTIC, M)
    assert fb.y0.coefficients() == [quintic_a(n) for n in range(M + 1)]
    y1 = fb.solutions[1]
    assert y1.part(1).coefficients() == fb.y0.coefficients()
    # d/d eps log of the term ratio gives 5 (H_5n - H_n)
    assert y1.part(0).coefficients() == [quintic_a(n) * 5 * (H(5 * n) - H(n)) for n in range(M + 1)]
    assert len(fb.solutions) == 4


def test_solutions_are_annihilated():
    L = parse_operator("T^4 - 16*x*(128*T^4+256*T^3+304*T^2+176*T+39) + 2^20*x^2*(T+1)^4")
    fb = frobenius_basis(L, 10)
    for y in fb.solutions:
        r = L.apply(y)
        assert all(p.truncate(10).is_zero() for p in r.parts)


def test_quintic_instantons():
    md = yukawa_coupling(QUINTIC, 4)
    # classical quintic instanton numbers divided by the triple intersection 5 (K starts at 1)
    assert [5 * n for n in md.instantons[:3]] == [2875, 609250, 317206375]
    assert md.normalizer == 1


def test_mirror_map_leading_terms():
    md = mirror_map(QUINTIC, 3)
    q = md.q
    # q = x exp(y1 part / y0) with the first correction 5 * (H_5 - H_1) * 120 = 770
    assert q[1] == 1 and q[2] == 770
    assert md.x_of_q.compose(q).coefficients(3) == [0, 1, 0, 0]


def test_yukawa_requires_order_four():
    with pytest.raises(PreconditionError):
        yukawa_coupling(ThetaOperator([T ** 2, -(2 * T + 1) ** 2]), 4)


@given(st.lists(st.integers(min_value=-50, max_value=50), min_size=1, max_size=10))
def test_instanton_inversion(N):
    K = k_from_instantons([F(v) for v in N])
    back, c = instanton_numbers(K)
    assert list(back) == N and c == 1


def test_instanton_normalizer():
    # c_1 = N_1, c_2 = N_1 + 8 N_2
    N, c = instanton_numbers([F(1, 2), F(3, 2)])
    assert N == (F(1, 2), F(1, 8)) and c == 8


def test_equivalent_to_itself_and_twist():
    assert equivalent_k(QUINTIC, QUINTIC, 5)
    flipped = ThetaOperator([T ** 4, 5 * (5 * T + 1) * (5 * T + 2) * (5 * T + 3) * (5 * T + 4)])
    assert not equivalent_k(QUINTIC, flipped, 5)
    assert equivalent_k(QUINTIC, flipped, 5, twist=-1)


def test_transformation_to_itself_is_trivial():
    f, g = equivalence_transformation(QUINTIC, QUINTIC, 5)
    assert f.coefficients() == [1, 0, 0, 0, 0, 0]
    assert g.coefficients() == [0, 1, 0, 0, 0, 0]


def test_transformation_satisfies_defining_relations():
    A = QUINTIC
    B = ThetaOperator([T ** 4, -10 * (5 * T + 1) * (5 * T + 2) * (5 * T + 3) * (5 * T + 4)])
    M = 5
    f, g = equivalence_transformation(A, B, M)
    y0a, y0b = frobenius_basis(A, M).y0, frobenius_basis(B, M).y0
    assert (f * y0a.compose(g)).coefficients(M) == y0b.coefficients(M)
    qa, qb = mirror_map(A, M + 1).q, mirror_map(B, M + 1).q
    assert qa.compose(g).coefficients(M) == qb.coefficients(M)


def franel(n):
    return sum(comb(n, k) ** 3 for k in range(n + 1))


def test_series_annihilator_finds_franel_operator():
    seq = [franel(n) for n in range(40)]
    L = series_annihilator(seq, 2, 2)
    expected = ThetaOperator([T ** 2, -(7 * T ** 2 + 7 * T + 2), -8 * (T + 1) ** 2]).canonical()
    assert L == expected


def test_series_annihilator_needs_terms():
    with pytest.raises(PreconditionError):
        series_annihilator([1, 2, 3], 2, 2)


def test_series_annihilator_none_within_bounds():
    seq = [factorial(n) ** 2 for n in range(30)]  # theta - x (theta+1)^3
    assert series_annihilator(seq, 2, 1) is None
    assert series_annihilator(seq, 3, 1) == ThetaOperator([T, -(T + 1) ** 3])


def test_basis_truncate():
    fb = frobenius_basis(QUINTIC, 6)
    assert fb.truncate(3).y0.coefficients() == fb.y0.coefficients(3)
    with pytest.raises(PreconditionError):
        fb.truncate(7)


def test_second_order_basis():
    L = ThetaOperator([T ** 2, -4 * (2 * T + 1) ** 2])
    fb = frobenius_basis(L, 6)
    assert fb.y0.coefficients() == [comb(2 * n, n) ** 2 for n in range(7)]
    assert len(fb.solutions) == 2
