from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from cykit.catalog import catalog_get
from cykit.cystruct import (
    IDENTITY_IDS,
    a_coefficients,
    a_from_b,
    b_coefficients,
    b_from_a,
    cy2_check,
    exterior_square_operator,
    cy5_check,
    exterior_power_operator,
    verify_identities,
    wronskian_lift,
    yang_pullback,
    yang_pullback_via_gauge,
)
from cykit.errors import PreconditionError
from cykit.exact import Polynomial, RationalFunction, log_wronskian
from cykit.families import hypergeometric_quintic, tilde_spec
from cykit.frobenius import frobenius_basis
from cykit.opalg import T, ThetaOperator, theta_poly

TH4 = ThetaOperator([T ** 4])
TH5 = ThetaOperator([T ** 5])
X = Polynomial.gen()


def xp(k, c=1):
    return RationalFunction.x_power(k, c)


def test_theta4_coefficients():
    assert a_coefficients(TH4) == (xp(-1, 6), xp(-2, 7), xp(-3, 1), RationalFunction(0))


def test_theta5_coefficients():
    assert b_coefficients(TH5)[:4] == (xp(-1, 10), xp(-2, 25), xp(-3, 15), xp(-4, 1))


def test_cy2_examples():
    assert cy2_check(TH4)
    assert cy2_check(catalog_get("tilde-3").operator)
    # a constant x-term only moves a0, which the condition does not involve
    assert cy2_check(ThetaOperator([T ** 4, theta_poly([1])]))
    assert not cy2_check(ThetaOperator([T ** 4, T]))


def test_cy5_examples():
    assert cy5_check(TH5)
    assert cy5_check(hypergeometric_quintic(tilde_spec(7)))
    assert not cy5_check(ThetaOperator([T ** 5, -T ** 2]))


def test_a_from_b_on_theta5():
    assert a_from_b(b_coefficients(TH5)) == a_coefficients(TH4)[:4]
    b = b_from_a(a_coefficients(TH4))
    assert b == b_coefficients(TH5)[:4]


def test_a3_relation_on_zero_b4():
    zero = RationalFunction(0)
    assert a_from_b([zero] * 4)[0] == xp(-1, 2)


small = st.integers(min_value=-6, max_value=6)


@st.composite
def rational_functions(draw):
    num = Polynomial(draw(st.lists(small, min_size=1, max_size=3)))
    den = Polynomial(draw(st.lists(small, min_size=1, max_size=2)) + [1])
    return RationalFunction(num, den * X)


@given(st.lists(rational_functions(), min_size=4, max_size=4))
def test_b_from_a_inverts_a_from_b(bs):
    assert b_from_a(a_from_b(bs)) == tuple(bs)


@given(st.lists(rational_functions(), min_size=4, max_size=4))
def test_a_from_b_inverts_b_from_a(as_):
    assert a_from_b(b_from_a(as_)) == tuple(as_)


def test_pullback_and_lift_of_theta_powers():
    assert yang_pullback(TH5) == TH4
    assert wronskian_lift(TH4) == TH5


@pytest.mark.parametrize("m", [1, 3, 6, 9])
def test_two_pullback_routes_agree(m):
    L5 = hypergeometric_quintic(tilde_spec(m))
    assert yang_pullback(L5) == yang_pullback_via_gauge(L5)


def test_pullback_preconditions():
    with pytest.raises(PreconditionError):
        yang_pullback(TH4)
    with pytest.raises(PreconditionError):
        yang_pullback(ThetaOperator([T ** 5, -T ** 2]))
    with pytest.raises(PreconditionError):
        wronskian_lift(ThetaOperator([T ** 4, T]))


def test_lift_annihilates_wronskians_of_sporadic_18():
    L = catalog_get("sporadic-18").operator
    L5 = wronskian_lift(L)
    assert L5.order == 5
    M = 12
    fb = frobenius_basis(L, M + 2)
    w = log_wronskian([fb.solutions[0], fb.solutions[1]]).shift(1)
    # the lift is a gauge transform of the exterior square, which kills x W(y0, y1) itself
    res = exterior_square_operator(L).apply(w)
    assert all(p.truncate(M).is_zero() for p in res.parts)


def test_identity_ids():
    assert len(IDENTITY_IDS) == len(set(IDENTITY_IDS)) == 32


def test_identities_for_theta4():
    reports = verify_identities(TH4, 10)
    assert all(r.passed for r in reports)


def test_identities_detect_non_cy2():
    reports = {r.ident: r for r in verify_identities(ThetaOperator([T ** 4, T]), 8)}
    assert not reports["CY2-EQUIV"].passed
    assert reports["CY2-EQUIV"].residual_valuation < 8


def test_exterior_power_of_theta4():
    # W(y0, y1, y2) = x^-3 for theta^4; the returned operator kills x^3 W = 1
    E = exterior_power_operator(TH4, (0, 1, 2))
    assert E == TH4
    assert exterior_power_operator(TH4, (2, 0, 1)) == E


def test_exterior_power_preconditions():
    with pytest.raises(PreconditionError):
        exterior_power_operator(TH4, (0, 0, 1))
    with pytest.raises(PreconditionError):
        exterior_power_operator(ThetaOperator([T ** 4, T]), (0, 1, 2))
