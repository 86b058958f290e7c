"""Acceptance suite.

Every test carries a ``criterion`` marker; the summary at the end of the run
prints one PASS/FAIL line per criterion.  Checks that cannot hold as literally
stated are kept verbatim as strict xfails next to the corrected check.

Run alone with ``python3 -m pytest tests/test_acceptance.py``.
"""

from fractions import Fraction as F
from random import Random

import pytest

from cykit.catalog import catalog_get, default_catalog
from cykit.cystruct import (
    a_from_b,
    b_coefficients,
    b_from_a,
    cy2_check,
    exterior_power_operator,
    verify_identities,
    wronskian_lift,
    yang_pullback,
)
from cykit.diffops import (
    boundary_coefficients,
    diff_to_de,
    superseeker_lookup,
    superseeker_signature,
)
from cykit.exact import Polynomial, PowerSeries, RationalFunction, gauge_series
from cykit.exact import stirling1_table, stirling2_table
from cykit.families import (
    DEGREE_TWO,
    TILDE_ROWS,
    hadamard_product,
    hadamard_square_recursion,
    hypergeometric_quintic,
    proposition_w1_check,
    pullback_closed_form,
    retained_products,
    sequence_oracle,
    theorem_solution_check,
    tilde_spec,
)
from cykit.frobenius import (
    equivalence_transformation,
    equivalent_k,
    frobenius_basis,
    instanton_numbers,
    mirror_map,
    series_annihilator,
    yukawa_coupling,
)
from cykit.opalg import weyl_right_divide
from cykit.text import parse_difference, parse_operator, render_operator

CAT = default_catalog()
criterion = pytest.mark.criterion


def quartic(ident):
    return catalog_get(ident).operator


# 1. pullbacks of the fourteen hypergeometric quintics

PRINTED_TILDE = {
    3: "T^4-16*x*(128*T^4+256*T^3+304*T^2+176*T+39)+2^20*x^2*(T+1)^4",
    4: "T^4-18*x*(324*T^4+648*T^3+765*T^2+441*T+97)+2^2*3^10*x^2*(T+1)^2*(6*T+5)*(6*T+7)",
    5: "T^4-12*x*(288*T^4+576*T^3+682*T^2+394*T+87)+144*x^2*(12*T+11)^2*(12*T+13)^2",
    10: "T^4-16*x*(2048*T^4+4096*T^3+4800*T^2+2752*T+599)+2^24*z^2*(T+1)^2*(4*T+3)*(4*T+5)",
    14: "T^4-48*x*(1152*T^4+2304*T^3+2704*T^2+1552*T+339)+2^16*3^2*z^2*(6*T+5)^2*(6*T+7)^2",
}


@criterion(1)
@pytest.mark.parametrize("m", sorted(TILDE_ROWS))
def test_c1_pullback_rows(m):
    s = tilde_spec(m)
    P = yang_pullback(hypergeometric_quintic(s))
    assert P == pullback_closed_form(s.alpha, s.beta, s.c)
    assert P == quartic(f"tilde-{m}")
    if m in PRINTED_TILDE:
        assert P == parse_operator(PRINTED_TILDE[m])


# 2. the printed quintic #130

@pytest.fixture(scope="module")
def c2_data():
    M = 20
    L5 = quartic("quintic-130")
    P = yang_pullback(L5)
    fb = frobenius_basis(P, M)
    return M, L5, P, fb, frobenius_basis(L5, M).y0, b_coefficients(L5)[0]


@criterion(2)
def test_c2_pullback_degree(c2_data):
    _, _, P, *_ = c2_data
    assert (P.order, P.degree) == (4, 6)
    assert P == quartic("pullback-130")


@criterion(2)
@pytest.mark.xfail(strict=True, reason="the printed relation uses the quartic's y0 where the quintic's is named")
def test_c2_literal_y0_relation(c2_data):
    # Y0 = x^3 * y0_quintic * exp(-(3/10) int b4 dx)
    M, _, _, fb, w0, b4 = c2_data
    g = gauge_series(b4, F(-3, 10), M)
    assert g.rho == -3
    assert fb.y0.equal_to_order(w0 * g.unit, M)


@criterion(2)
def test_c2_quintic_period_from_quartic(c2_data):
    # w0 = Y0^2 (1 + theta sigma) x^-6 exp((3/5) int b4 dx) with sigma = y1/y0 - log x
    M, _, _, fb, w0, b4 = c2_data
    g = gauge_series(b4, F(3, 5), M)
    assert g.rho == 6
    Y = fb.y0
    sigma = fb.solutions[1].part(0) / Y
    assert (w0 / (Y * Y * (1 + sigma.theta()))).equal_to_order(g.unit, M - 1)


# 3. identity suite at order 20

@criterion(3)
@pytest.mark.parametrize("ident", ["T^4", "tilde-3", "sporadic-18", "sporadic-26"])
def test_c3_identities(ident):
    L = parse_operator(ident) if ident == "T^4" else quartic(ident)
    reports = verify_identities(L, 20)
    failed = [str(r) for r in reports if not r.passed]
    assert not failed
    assert len(reports) == 32


# 4. round trips

@criterion(4)
@pytest.mark.parametrize("ident", ["T^4", "tilde-3", "sporadic-18", "sporadic-26"])
def test_c4_pullback_of_lift(ident):
    L = parse_operator(ident) if ident == "T^4" else quartic(ident)
    assert yang_pullback(wronskian_lift(L)) == L


@criterion(4)
@pytest.mark.parametrize("m", sorted(TILDE_ROWS))
def test_c4_lift_of_pullback(m):
    L5 = hypergeometric_quintic(tilde_spec(m))
    assert wronskian_lift(yang_pullback(L5)) == L5


def _random_rf(rng):
    num = Polynomial([F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(rng.randint(1, 3))], "x")
    den = Polynomial([1] + [rng.randint(-5, 5) for _ in range(rng.randint(0, 2))], "x")
    return RationalFunction(num, den)


@criterion(4)
def test_c4_ab_inversion():
    rng = Random(20)
    for _ in range(20):
        a = tuple(_random_rf(rng) for _ in range(4))
        assert a_from_b(b_from_a(a)) == a
        assert b_from_a(a_from_b(a)) == a


# 5. Hadamard products

@criterion(5)
def test_c5_printed_d_times_j():
    printed = parse_operator("T^4-144*x*(6*T+1)*(6*T+5)*(72*T^2+72*T+31)"
                             "+12^2*186624*x^2*(6*T+1)*(6*T+5)*(6*T+7)*(6*T+11)")
    assert hadamard_product("D", "j") == printed


@criterion(5)
def test_c5_retained_products_are_cy():
    pairs = retained_products()
    assert len(pairs) == 38
    assert all(cy2_check(hadamard_product(h, d)) for h, d in pairs)


@criterion(5)
def test_c5_trivial_yukawa():
    K = yukawa_coupling(hadamard_product("C", "h"), 15).K_coeffs
    assert list(K[:15]) == [0] * 15


# 6. equivalences

EQUIV = [r.args for r in CAT.relations if r.kind == "equivalent"]


@criterion(6)
@pytest.mark.xfail(strict=True, reason="the tabulated pairs agree only after q -> -q")
def test_c6_literal_equivalences():
    assert len(EQUIV) == 10
    assert all(equivalent_k(quartic(a), quartic(b), 12) for a, b in EQUIV)


@criterion(6)
def test_c6_equivalences_up_to_sign():
    assert len(EQUIV) == 10
    assert all(equivalent_k(quartic(a), quartic(b), 12, twist=-1) for a, b in EQUIV)


@pytest.fixture(scope="module")
def c6_transform():
    return equivalence_transformation(quartic("hadamard-e-e"), quartic("tilde-3"), 12)


@criterion(6)
@pytest.mark.xfail(strict=True, reason="printed g coefficient 91920; the series gives 81920")
def test_c6_literal_transformation(c6_transform):
    f, g = c6_transform
    assert f.coefficients(3) == [1, 480, 383488, 330493952]
    assert g.coefficients(4) == [0, 1, 128, 91920, 52555776]


@criterion(6)
def test_c6_transformation(c6_transform):
    f, g = c6_transform
    assert f.coefficients(3) == [1, 480, 383488, 330493952]
    assert g.coefficients(4) == [0, 1, 128, 81920, 52555776]


# 7. the recursion example

def _recursion(n3):
    q = "(77*{s}^2-209*{s}+142)"
    return (f"(n+2)^4*{q.format(s='(n+2)')}*N^2"
            f" - (37345*n^6+272085*n^5+806321*n^4+{n3}*n^3+1038758*n^2+448272*n+77824)*N"
            f" - 384*(2*n+1)^2*(3*n+1)*(3*n+2)*{q.format(s='(n+3)')}")


PRINTED_L = ("T^4*(77*T^2-209*T+142)-x*(37345*T^6+48015*T^5+6071*T^4-11683*T^3-2944*T^2+78*T+240)"
             "-384*x^2*(2*T+1)^2*(3*T+1)*(3*T+2)*(77*(T+3)^2-209*(T+3)+142)")
PRINTED_L2 = ("5^2*T^4-5*x*(2617*T^4+4658*T^3+3379*T^2+1050*T+120)"
              "-2^6*3*x^2*(-673*T^4+4871*T^3+10282*T^2+5410*T+860)"
              "+2^10*3^2*x^3*(955*T^4+4320*T^3+3477*T^2+1020*T+100)"
              "-2^17*3^3*x^4*(2*T+1)^2*(3*T+1)*(3*T+2)")


@criterion(7)
@pytest.mark.xfail(strict=True, reason="printed recursion and printed operator disagree in two coefficients")
def test_c7_literal_transposition():
    assert diff_to_de(parse_difference(_recursion(123965))).canonical() == parse_operator(PRINTED_L)


@criterion(7)
def test_c7_corrected_transposition():
    R = parse_difference(_recursion(1239651))
    assert diff_to_de(R).canonical() == quartic("diffop-232")
    seq = sequence_oracle("232", 32)
    assert all(R.residual(seq, n) == 0 for n in range(-R.order, 31))
    assert boundary_coefficients(R, seq) == [0] * R.order


@criterion(7)
def test_c7_factor():
    L = quartic("diffop-232")
    R = series_annihilator(sequence_oracle("232", 40), 4, 4)
    assert R is not None and R.order == 4
    div = weyl_right_divide(L, R)
    assert div.exact
    # differences to the printed right factor would be errata; there are none
    assert R.canonical() == parse_operator(PRINTED_L2)


# 8. recursion signature table

@criterion(8)
def test_c8_discriminants():
    checked = errata = 0
    for row in CAT.rows:
        if row.garbled or row.Q0 is None:
            continue
        D = superseeker_signature(row.Q0).D
        checked += 1
        if D != row.printed_D or row.D_text_value not in (None, D):
            assert row.erratum, (row.id, row.printed_D, D)
            errata += 1
    assert checked > 60 and errata == 7


@criterion(8)
def test_c8_lookup_232():
    L = quartic("diffop-232")
    sig = superseeker_signature(L)
    assert sig.D == -55
    assert "232" in superseeker_lookup(sig)


# 9. Hadamard squares

@criterion(9)
@pytest.mark.parametrize("name", ["a", "e", "h"])
def test_c9_square_recursion(name):
    d = DEGREE_TWO[name]
    seq = [v * v for v in d.sequence(24)]
    R = hadamard_square_recursion(d.a, d.b, d.c)
    assert R.order == 3
    assert all(R.residual(seq, n) == 0 for n in range(21))


# 10. degree-3 operators

@criterion(10)
@pytest.mark.parametrize("key", ["34", "145", "155", "165", "214", "227", "228"])
def test_c10_degree_three(key):
    L = quartic(f"deg3-{key}")
    assert L.degree == 3
    y = PowerSeries(sequence_oracle(key, 15), 15)
    assert L.apply(y).is_zero()
    assert cy2_check(L)


# 11. exterior power

@criterion(11)
def test_c11_exterior_power(capsys):
    L = quartic("tilde-3")
    E = exterior_power_operator(L, (0, 1, 2))
    a, b = yukawa_coupling(L, 12), yukawa_coupling(E, 12)
    assert a.q.equal_to_order(b.q, 12)
    assert a.K_coeffs[:12] == b.K_coeffs[:12]
    assert mirror_map(E, 12).q.equal_to_order(mirror_map(L, 12).q, 12)
    with capsys.disabled():
        print(f"\n  exterior power of tilde-3: order {E.order}, degree {E.degree} (from {L.degree})")


# 12. closed-form solutions

@criterion(12)
@pytest.mark.parametrize("m", [1, 3, 4])
def test_c12_theorem(m):
    s = tilde_spec(m)
    assert theorem_solution_check(s.alpha, s.beta, s.c, 12).passed


@criterion(12)
@pytest.mark.parametrize("m", sorted(TILDE_ROWS))
def test_c12_proposition(m):
    assert proposition_w1_check(tilde_spec(m), 12).passed


# 13. property suites

DEG2 = [i for i in CAT.ids()
        if CAT.entries[i].operator is not None and not CAT.entries[i].excluded
        and CAT.entries[i].operator.order == 4 and CAT.entries[i].operator.degree == 2
        and "factorable" not in CAT.entries[i].tags]


@criterion(13)
@pytest.mark.parametrize("ident", DEG2)
def test_c13_instanton_integrality(ident):
    K = yukawa_coupling(quartic(ident), 10).K_coeffs[:10]
    N, c = instanton_numbers(K, 10)
    assert c <= 10 ** 6


@criterion(13)
def test_c13_stirling_inverse():
    n = 8
    s, S = stirling1_table(n), stirling2_table(n)
    for i in range(n + 1):
        for j in range(n + 1):
            v = sum((s[i][k] if k <= i else 0) * (S[k][j] if j <= k else 0) for k in range(n + 1))
            assert v == (i == j)


@criterion(13)
def test_c13_catalog_round_trip():
    for ident in CAT.ids():
        L = CAT.entries[ident].operator
        if L is None:
            continue
        for style in ("theta", "machine"):
            assert parse_operator(render_operator(L, style)) == L, (ident, style)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
