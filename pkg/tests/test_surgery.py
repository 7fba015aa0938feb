import pytest
from hypothesis import given
from hypothesis import strategies as st

from qjones.cyclo import CycNumber, RootSpec, ev_root
from qjones.cyclojones import CyclotomicCoeffs, LinkPairingTable, colored_jones
from qjones.fixtures import load_knot
from qjones.habiro import HabiroElement, h_equal, h_eval, h_mul, taylor_at_one
from qjones.qpoly import ONE, ZERO, LaurentPoly, brace, bracket, factorial, qpochhammer, qpow, unbalanced
from qjones.surgery import (
    DegenerateRootError,
    NPoly,
    SurgeryError,
    SurgeryPresentation,
    balanced_weight,
    check_evaluation,
    evaluation_pair,
    framing_shift,
    gauss_sum,
    laplace,
    laplace_poly,
    omega_term,
    surgery_knot,
    surgery_relative,
    wrt_state_sum,
)

q = qpow(1)
UNKNOT = CyclotomicCoeffs.unknot(12)


def coeffs(name):
    return load_knot(name).coeffs


def _ratio(l):
    return factorial("unbalanced", 2 * l + 1).exact_div(factorial("unbalanced", l) * unbalanced(1))


def test_omega_term_examples():
    assert omega_term(-1, 0) == ONE
    assert omega_term(1, 0) == ONE
    assert omega_term(1, 1) == qpow(-3) * ((1 - q**2) * (1 - q**3)).exact_div(1 - q)


@pytest.mark.parametrize("f", [1, -1])
def test_omega_term_matches_balanced_weight(f):
    # balanced weight times {2l+1}!/({l}!{1}) agrees with the unbalanced rewriting
    from qjones.cyclojones import pprime_factor

    for l in range(8):
        assert balanced_weight(f, l) * pprime_factor(l) == omega_term(f, l)


def test_omega_term_bad_framing():
    with pytest.raises(SurgeryError):
        omega_term(2, 1)


def test_surgery_knot_unknot():
    for f in (1, -1):
        assert surgery_knot(UNKNOT, f, 6) == HabiroElement.constant(1, 6)


def test_surgery_knot_trefoil_instantiation():
    C = coeffs("trefoil")
    total = ZERO
    for k in range(3):
        total = total + C[k] * qpow(-k * (k + 2)) * _ratio(k)
    assert surgery_knot(C, 1, 2) == HabiroElement.from_terms([total], 2)


def test_surgery_knot_figure8_expansion():
    expect = (
        ONE
        - qpow(-1) * ((1 - q**2) * (1 - q**3)).exact_div(1 - q)
        + qpow(-3) * ((1 - q**2) * (1 - q**3) * (1 - q**4) * (1 - q**5)).exact_div((1 - q**2) * (1 - q))
    )
    assert surgery_knot(coeffs("figure8"), -1, 2) == HabiroElement.from_terms([expect], 2)


@pytest.mark.parametrize("name,f", [("trefoil", 1), ("trefoil", -1), ("figure8", 1), ("figure8", -1)])
def test_surgery_knot_term_valuation(name, f):
    J = surgery_knot(coeffs(name), f, 8)
    for k in range(9):
        raw = coeffs(name)[k] * omega_term(f, k)
        assert qpochhammer(k).divides(raw)
        if raw:
            assert taylor_at_one(raw, max(k - 1, 0))[:k] == [0] * k
    assert J.trunc == 8


def test_surgery_relative_no_surgery():
    C = coeffs("figure8")
    p = SurgeryPresentation("figure8", (), LinkPairingTable.knot(C, "colored"))
    for n in (1, 2, 3):
        series = surgery_relative(p, [n], 4)
        assert h_equal(series, HabiroElement.from_laurent(colored_jones(C, n), 4))


def test_surgery_relative_split_union():
    K, S = coeffs("figure8"), coeffs("trefoil")
    p = SurgeryPresentation.knot_surgery(S, 1, colored=K)
    for n in (1, 2, 3):
        expect = h_mul(HabiroElement.from_laurent(colored_jones(K, n), 5), surgery_knot(S, 1, 5))
        assert h_equal(surgery_relative(p, [n], 5), expect)


def test_surgery_relative_colors_one():
    p = SurgeryPresentation.knot_surgery(coeffs("trefoil"), -1, colored=coeffs("figure8"))
    assert h_equal(surgery_relative(p, [1], 5), surgery_knot(coeffs("trefoil"), -1, 5))


def test_surgery_relative_color_count():
    p = SurgeryPresentation.knot_surgery(coeffs("trefoil"), 1)
    with pytest.raises(SurgeryError):
        surgery_relative(p, [2], 3)


def test_framing_shift_examples():
    J = kz = HabiroElement.constant(1, 3)
    assert framing_shift(J, 1, 1) == J
    assert framing_shift(J, 1, 2).prefactor_e == kz.prefactor_e + 3
    assert framing_shift(J, -2, 3).prefactor_e == -16


def test_gauss_sum_examples():
    assert gauss_sum(1, 1) == CycNumber(4, [2, -2])
    assert gauss_sum(-1, 1) == CycNumber(4, [2, 2])
    for d in range(1, 7):
        assert gauss_sum(-1, d) == gauss_sum(1, d).conjugate_inverse()
        assert not gauss_sum(1, d).is_zero()
    with pytest.raises(DegenerateRootError):
        gauss_sum(1, 0)


def test_laplace_examples():
    for f in (1, -1):
        assert laplace(f, 1, 0) == qpow(-f)
        assert laplace(f, 0, 5) == qpow(5)


@given(st.sampled_from([1, -1]), st.integers(1, 6), st.integers(-3, 3), st.integers(-2, 2))
def test_laplace_lemma(f, d, a, b):
    r = RootSpec.from_d(d)
    total = ZERO
    for n in range(1, 4 * d + 1):
        total = total + LaurentPoly.monomial(f * (n * n - 1) + 4 * (b + n * a))
    assert ev_root(total, r) == gauss_sum(f, d) * ev_root(laplace(f, a, b), r)


def test_laplace_poly_linear():
    p = NPoly.brace_shift(0) * NPoly.brace_shift(0)
    # {n}^2 = q^n - 2 + q^{-n}
    assert p.at(3) == brace(3) * brace(3)
    for f in (1, -1):
        assert laplace_poly(f, p) == 2 * qpow(-f) - 2
    with pytest.raises(SurgeryError):
        laplace_poly(1, NPoly.brace_shift(0))


def test_wrt_unknot():
    for f in (1, -1):
        p = SurgeryPresentation.knot_surgery(UNKNOT, f)
        assert wrt_state_sum(p, [], 2) == 1


def test_wrt_denominator_matches_gauss_sum():
    for f in (1, -1):
        for d in range(2, 6):
            r = RootSpec.from_d(d)
            den = CycNumber.zero(r.m)
            for m in range(1, 4 * d + 1):
                den = den + ev_root(bracket(m) * bracket(m) * LaurentPoly.monomial(f * (m * m - 1)), r)
            rhs = gauss_sum(f, d) * ev_root(2 * qpow(-f) - 2, r) / ev_root(brace(1) * brace(1), r)
            assert den == rhs


def test_wrt_needs_d_two():
    p = SurgeryPresentation.knot_surgery(UNKNOT, 1)
    with pytest.raises(DegenerateRootError):
        wrt_state_sum(p, [], 1)


def test_check_evaluation_examples():
    for f in (1, -1):
        p = SurgeryPresentation.knot_surgery(UNKNOT, f)
        for d in range(2, 6):
            a, b = evaluation_pair(p, [], d)
            assert a == b == 1
    assert check_evaluation(SurgeryPresentation.knot_surgery(coeffs("trefoil"), 1), [], 3)
    assert check_evaluation(SurgeryPresentation.knot_surgery(coeffs("figure8"), -1), [], 4)


def test_check_evaluation_with_colored_component():
    p = SurgeryPresentation.knot_surgery(coeffs("trefoil"), -1, colored=coeffs("figure8"))
    assert check_evaluation(p, [2], 3)


@pytest.mark.parametrize("f", [1, -1])
def test_presentation_independence(f):
    p = SurgeryPresentation.knot_surgery(coeffs("figure8"), -1)
    bigger = p.add_split_unknot(f, kmax=5)
    assert h_equal(surgery_relative(p, [], 5), surgery_relative(bigger, [], 5), 5)


def test_presentation_json_round_trip():
    p = SurgeryPresentation.knot_surgery(coeffs("trefoil").truncate(4), 1, colored=coeffs("figure8").truncate(4))
    again = SurgeryPresentation.from_json(p.to_json())
    assert again.to_json() == p.to_json()


def test_trefoil_surgery_fixture_loads():
    p = SurgeryPresentation.load("trefoil_surgery")
    assert p.framings == (-1,) and p.r == 0
