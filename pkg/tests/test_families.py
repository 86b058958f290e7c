from fractions import Fraction as F
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from cykit.cystruct import cy2_check, yang_pullback
from cykit.diffops import DifferenceOperator
from cykit.errors import DomainError, PreconditionError
from cykit.exact import PowerSeries
from cykit.families import (
    BINOM_LIFT,
    DEGREE_TWO,
    EXCLUDED_PRODUCTS,
    HYPER_SECOND,
    TILDE_ROWS,
    HadamardFamily,
    HypergeometricQuinticSpec,
    binom,
    binom_lift_third,
    hadamard_2x2,
    hadamard_product,
    hadamard_series,
    hadamard_square_recursion,
    hypergeometric_quintic,
    proposition_w1_check,
    pullback_closed_form,
    retained_products,
    second_order,
    sequence_oracle,
    theorem_solution_check,
    tilde_spec,
)
from cykit.frobenius import frobenius_basis, mum_check
from cykit.opalg import T, ThetaOperator
from cykit.text import parse_operator

C = comb


def test_hypergeometric_blocks():
    fmls = {
        "A": lambda n: C(2 * n, n) ** 2,
        "B": lambda n: factorial(3 * n) // factorial(n) ** 3,
        "C": lambda n: factorial(4 * n) // (factorial(2 * n) * factorial(n) ** 2),
        "D": lambda n: factorial(6 * n) // (factorial(3 * n) * factorial(2 * n) * factorial(n)),
    }
    for name, f in fmls.items():
        assert HYPER_SECOND[name].sequence(8) == [f(n) for n in range(9)]


@pytest.mark.parametrize("name, formula", [
    ("a", lambda n: sum(C(n, k) ** 3 for k in range(n + 1))),
    ("b", lambda n: sum(C(n, k) ** 2 * C(n + k, k) for k in range(n + 1))),
    ("c", lambda n: sum(C(n, k) ** 2 * C(2 * k, k) for k in range(n + 1))),
    ("d", lambda n: sum(C(n, k) * C(2 * k, k) * C(2 * (n - k), n - k) for k in range(n + 1))),
    ("f", lambda n: sum((-1) ** k * 3 ** (n - 3 * k) * C(n, 3 * k) * C(3 * k, k) * C(2 * k, k)
                        for k in range(n // 3 + 1))),
    ("g", lambda n: sum((-1) ** k * 8 ** (n - k) * C(n, k) * sum(C(k, j) ** 3 for j in range(k + 1))
                        for k in range(n + 1))),
])
def test_degree_two_blocks(name, formula):
    assert DEGREE_TWO[name].sequence(10) == [formula(n) for n in range(11)]


def test_block_j_matches_its_formula():
    assert DEGREE_TWO["j"].sequence(8) == sequence_oracle("j", 8)


def test_hadamard_2x2_closed_form():
    L = hadamard_2x2(DEGREE_TWO["j"].P, -186624, HYPER_SECOND["D"].Q)
    printed = parse_operator("T^4-144*x*(6*T+1)*(6*T+5)*(72*T^2+72*T+31)"
                             "+12^2*186624*x^2*(6*T+1)*(6*T+5)*(6*T+7)*(6*T+11)")
    assert L == printed
    assert hadamard_product("D", "j") == hadamard_product("(j)", "D") == L


def test_hadamard_2x2_degree_checks():
    with pytest.raises(DomainError):
        hadamard_2x2(T ** 3, 1, (2 * T + 1) ** 2)
    with pytest.raises(DomainError):
        hadamard_2x2(T ** 2, 1, 2 * T + 1)
    with pytest.raises(DomainError):
        hadamard_product("A", "z")


@pytest.mark.parametrize("h, d", [("A", "a"), ("B", "e"), ("C", "j"), ("D", "c")])
def test_closed_form_agrees_with_termwise_product(h, d):
    L = hadamard_product(h, d)
    N = 10
    seq = [a * b for a, b in zip(HYPER_SECOND[h].sequence(N), DEGREE_TWO[d].sequence(N))]
    y = PowerSeries(seq, N)
    assert L.apply(y).is_zero()
    fam = HadamardFamily(second_order(h), second_order(d))
    assert fam.sequence(N) == seq


def test_hadamard_family_basis_matches_closed_form():
    L = hadamard_product("A", "a")
    fb = HadamardFamily(second_order("A"), second_order("a")).frobenius_basis(6)
    direct = frobenius_basis(L, 6)
    for u, v in zip(fb.solutions, direct.solutions):
        assert all(p.coefficients() == q.coefficients() for p, q in zip(u.parts, v.parts))


def test_hadamard_family_needs_two_factors():
    with pytest.raises(PreconditionError):
        HadamardFamily(second_order("A"))


def test_retained_products():
    kept = retained_products()
    assert len(kept) == 38
    assert all(p not in kept for p in EXCLUDED_PRODUCTS)


@given(st.lists(st.integers(-50, 50), min_size=6, max_size=6), st.lists(st.integers(-50, 50), min_size=6, max_size=6))
def test_hadamard_series_commutes(a, b):
    A, B = PowerSeries(a, 5), PowerSeries(b, 5)
    assert hadamard_series(A, B) == hadamard_series(B, A)
    assert hadamard_series(A, B).coefficients() == [x * y for x, y in zip(a, b)]


def test_hadamard_series_order_mismatch():
    with pytest.raises(PreconditionError):
        hadamard_series(PowerSeries([1], 3), PowerSeries([1], 4))


@pytest.mark.parametrize("name", sorted(BINOM_LIFT))
def test_binomial_lifts_are_cy(name):
    _, P, c = BINOM_LIFT[name]
    L = binom_lift_third(P, c)
    assert (L.order, L.degree) == (4, 2)
    assert mum_check(L) and cy2_check(L)


def test_quintic_spec_validation():
    with pytest.raises(DomainError):
        HypergeometricQuinticSpec((F(1, 3), F(1, 2), F(1, 2), F(1, 2), F(1, 2)), F(1))
    s = HypergeometricQuinticSpec.from_alpha_beta(F(-1, 6), 0, 4 * 432)
    assert s.a == (F(1, 2), F(1, 3), F(2, 3), F(1, 2), F(1, 2))
    assert (s.alpha, s.beta) == (F(-1, 6), 0)


def test_tilde_rows_consistent():
    assert len(TILDE_ROWS) == 14
    for m in TILDE_ROWS:
        tilde_spec(m)


def test_hypergeometric_quintic_y0():
    spec = tilde_spec(3)
    y0 = frobenius_basis(hypergeometric_quintic(spec), 6).y0
    # (1/2)_n^5 / n!^5 * 1024^n = C(2n, n)^5
    assert y0.coefficients() == [C(2 * n, n) ** 5 for n in range(7)]


@pytest.mark.parametrize("m", [2, 5, 8, 11, 13])
def test_pullback_closed_form(m):
    s = tilde_spec(m)
    assert yang_pullback(hypergeometric_quintic(s)) == pullback_closed_form(s.alpha, s.beta, s.c)


@pytest.mark.parametrize("m", [2, 7])
def test_theorem_and_proposition(m):
    s = tilde_spec(m)
    assert theorem_solution_check(s.alpha, s.beta, s.c, 8).passed
    assert proposition_w1_check(s, 8).passed


def test_hadamard_square_recursion_shape():
    R = hadamard_square_recursion(7, 2, 8)
    assert isinstance(R, DifferenceOperator) and R.order == 3


@pytest.mark.parametrize("name", ["a", "c", "g"])
def test_hadamard_square_recursion_annihilates_squares(name):
    d = DEGREE_TWO[name]
    seq = [v * v for v in d.sequence(18)]
    R = hadamard_square_recursion(d.a, d.b, d.c)
    assert all(R.residual(seq, n) == 0 for n in range(15))


def test_generalized_binomial():
    assert binom(5, 2) == 10
    assert binom(F(-1, 2), 2) == F(3, 8)
    assert binom(3, -1) == 0


def test_oracles():
    assert sequence_oracle("#34", 3) == [1, 5, 45, 545]
    assert sequence_oracle("232", 2) == [1, 4 * (3 + 3), 36 * (C(6, 2) + 4 * C(6, 3) + C(6, 4))]
    with pytest.raises(DomainError):
        sequence_oracle("999", 3)


def test_oracles_match_operators():
    for ident, key in [("hadamard-D-j", "D*j")]:
        from cykit.catalog import catalog_get

        L = catalog_get(ident).operator
        y = PowerSeries(sequence_oracle(key, 12), 12)
        assert L.apply(y).is_zero()


def test_second_order_lookup():
    assert second_order("(a)") == DEGREE_TWO["a"].operator()
    assert second_order("A") == ThetaOperator([T ** 2, -4 * (2 * T + 1) ** 2])
    with pytest.raises(DomainError):
        second_order("z")
