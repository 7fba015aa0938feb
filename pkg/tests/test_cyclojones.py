import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import cabled_colored_jones
from qjones.cyclojones import (
    CyclotomicCoeffs,
    CyclotomicError,
    InsufficientCoefficientsError,
    LinkPairingTable,
    colored_jones,
    ctilde,
    cyclotomic_solve,
    integrality_check,
    pairing,
    parity_class,
    pprime_factor,
    r_coeff,
)
from qjones.fixtures import load_knot
from qjones.qpoly import ONE, ZERO, LaurentPoly, RationalPoly, brace, bracket, cnk, factorial, qpochhammer, qpow
from strategies import laurent

UNKNOT = CyclotomicCoeffs.unknot(10)


def fixture(name):
    return load_knot(name).coeffs


def test_unknot_colored_jones():
    assert colored_jones(UNKNOT, 5) == bracket(5)
    for n in range(1, 10):
        assert colored_jones(UNKNOT, n) == bracket(n)


def test_color_one_is_c0():
    for name in ("trefoil", "figure8"):
        assert colored_jones(fixture(name), 1) == ONE


def test_figure8_color_two():
    J = colored_jones(fixture("figure8"), 2)
    assert J == LaurentPoly({10: 1, -10: 1})
    assert J == bracket(2) + brace(2) * brace(3)


def test_fixtures_match_cable_oracle():
    for name in ("trefoil", "figure8"):
        fx = load_knot(name)
        for n in (2, 3):
            assert colored_jones(fx.coeffs, n) == cabled_colored_jones(fx.diagram, n)


def test_trefoil_closed_form():
    C = fixture("trefoil")
    assert C.kmax >= 16
    for k in range(C.kmax + 1):
        assert C[k] == LaurentPoly.monomial(-2 * k * (k + 3), (-1) ** k)


def test_cyclotomic_solve_examples():
    C = cyclotomic_solve([ONE, LaurentPoly({10: 1, -10: 1})])
    assert C.coeffs == (ONE, ONE)
    C = cyclotomic_solve([bracket(n) for n in range(1, 7)])
    assert C.coeffs == (ONE,) + (ZERO,) * 5


def test_insufficient_coefficients():
    with pytest.raises(InsufficientCoefficientsError):
        colored_jones(CyclotomicCoeffs.unknot(2), 5)


def test_nonintegral_coefficients_rejected():
    with pytest.raises(CyclotomicError):
        CyclotomicCoeffs("bad", (ONE, LaurentPoly({2: 1})))


def test_pairing_examples():
    assert pairing("VV", 2, 3) == RationalPoly(bracket(6))
    assert pairing("PppS", 2, 2) == RationalPoly(ONE)
    assert pairing("PppS", 2, 1).is_zero()
    assert pairing("VS", 3, 3).is_zero()
    assert pairing("PpS", 2, 2) == RationalPoly(pprime_factor(2))
    with pytest.raises(ValueError):
        pairing("XX", 1, 1)


def test_r_coeff_examples():
    assert r_coeff(1, 1) == RationalPoly(-1, brace(1) * brace(3))
    assert r_coeff(1, 2) == RationalPoly(1, brace(2) * brace(3))
    for n in range(1, 6):
        assert r_coeff(n, n + 2).is_zero()


def test_ctilde_examples():
    C = fixture("trefoil")
    Ct = ctilde(C)
    assert Ct[0] == C[0]
    assert Ct[1] == C[1] * (brace(2) * brace(3)).exact_div(brace(1))
    assert ctilde(UNKNOT) == (ONE,) + (ZERO,) * 10


def test_ctilde_table_shape():
    table = LinkPairingTable.knot(fixture("figure8"), "colored").split_union(LinkPairingTable.knot(UNKNOT, "surgery"))
    out = ctilde(table)
    assert out.dims == (0, 2)
    assert out.get((), (2, 0)) == RationalPoly(pprime_factor(2))


def test_integrality_examples():
    assert integrality_check(ctilde(UNKNOT)).passed
    report = integrality_check(ctilde(fixture("figure8")))
    assert report.passed
    for key, ok, quotient in report.entries:
        assert quotient == ONE
    bad = list(ctilde(UNKNOT))
    bad[2] = ONE
    report = integrality_check(bad)
    assert not report.passed and report.failures() == [(2,)]


def test_pprime_divisible_by_pochhammer():
    for k in range(16):
        assert qpochhammer(k).divides(pprime_factor(k))
        quotient = pprime_factor(k).exact_div(qpochhammer(k))
        assert quotient.exponent_classes(2) == {0}


def test_orthogonality_small():
    for n in range(1, 6):
        for m in range(1, 6):
            total = RationalPoly(ZERO)
            for k in range(1, n + 2):
                total = total + r_coeff(n, k) * RationalPoly(cnk(k, m), brace(1))
            assert total == RationalPoly(ONE if n == m else ZERO)


def test_parity_on_fixtures():
    for name in ("trefoil", "figure8"):
        C = fixture(name)
        for n in range(1, 12):
            assert colored_jones(C, n).exponent_classes(4) == {parity_class(n)}


@given(st.lists(laurent(step=4, lo=-12, hi=12, max_terms=3), min_size=1, max_size=6))
def test_round_trip(raw):
    C = CyclotomicCoeffs("random", tuple(raw))
    values = [colored_jones(C, n) for n in range(1, len(raw) + 1)]
    assert cyclotomic_solve(values).coeffs == C.coeffs


def test_json_round_trips():
    C = fixture("figure8")
    assert CyclotomicCoeffs.from_json(C.to_json()) == C
    table = LinkPairingTable.knot(C, "surgery")
    assert LinkPairingTable.from_json(table.to_json(), table.name) == table


def test_factorial_helper_consistent():
    for k in range(6):
        assert pprime_factor(k) * factorial("brace", k) * brace(1) == factorial("brace", 2 * k + 1)
