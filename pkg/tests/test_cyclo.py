import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qjones.cyclo import CycNumber, RootSpec, cyc_div, cyclotomic_poly, ev_root, q_order
from qjones.qpoly import ONE, LaurentPoly, brace, qpow
from strategies import laurent

ROOT_ORDERS = st.sampled_from([4, 8, 12, 16, 20])


def test_cyclotomic_poly_small():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_ev_root_examples():
    assert ev_root(brace(2), 8).is_zero()
    for m in (1, 3, 4, 8, 20):
        assert ev_root(ONE, m) == CycNumber.one(m)
    assert ev_root(qpow(Fraction(1, 4)), RootSpec(4)) == CycNumber.x_power(4, 1)


def test_ev_matches_complex_value():
    p = LaurentPoly({-3: 2, 1: -1, 6: 5})
    for m in (5, 8, 12):
        z = cmath.exp(2j * cmath.pi / m)
        expect = sum(c * z**e for e, c in p.as_dict().items())
        assert abs(ev_root(p, m).to_complex() - expect) < 1e-9


def test_cyc_div_examples():
    a = CycNumber(4, [2, -2])
    assert cyc_div(a, a) == 1
    assert cyc_div(CycNumber.zero(4), a).is_zero()
    assert cyc_div(a, CycNumber(4, [1, -1])) == 2
    with pytest.raises(ZeroDivisionError):
        cyc_div(a, CycNumber.zero(4))


def test_root_spec():
    assert RootSpec.from_d(3).m == 12
    assert RootSpec(12).q_order == 3 == q_order(12)
    assert q_order(6) == 3
    with pytest.raises(ValueError):
        RootSpec(0)


def test_integrality_flag():
    assert CycNumber(8, [1, 2, 3]).is_integral()
    assert not CycNumber(8, [Fraction(1, 2)]).is_integral()


@given(laurent(), laurent(), ROOT_ORDERS)
def test_ev_is_ring_morphism(a, b, m):
    assert ev_root(a * b, m) == ev_root(a, m) * ev_root(b, m)
    assert ev_root(a + b, m) == ev_root(a, m) + ev_root(b, m)


@given(ROOT_ORDERS, st.integers(1, 4))
def test_torsion(m, mult):
    order = q_order(m)
    assert ev_root(qpow(order * mult) - 1, m).is_zero()


@given(laurent(), laurent(), ROOT_ORDERS)
def test_cyc_div_inverts_mul(a, b, m):
    A, B = ev_root(a, m), ev_root(b, m)
    if not B.is_zero():
        assert cyc_div(A * B, B) == A


@given(laurent(), st.sampled_from([4, 8, 12]))
def test_conjugate_inverse_matches_q_inversion(a, m):
    assert ev_root(a.invert_q(), m) == ev_root(a, m).conjugate_inverse()


@given(laurent(), ROOT_ORDERS)
def test_json_round_trip(a, m):
    z = ev_root(a, m)
    assert CycNumber.from_json(z.to_json()) == z
