"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from qjones.qpoly import LaurentPoly


def laurent(step: int = 1, lo: int = -12, hi: int = 12, max_terms: int = 5, coeff: int = 9):
    """Small Laurent polynomials whose quarter-unit exponents are multiples of ``step``."""
    terms = st.dictionaries(
        st.integers(lo // step, hi // step).map(lambda e: e * step),
        st.integers(-coeff, coeff),
        max_size=max_terms,
    )
    return terms.map(LaurentPoly)


def nonzero_laurent(step: int = 1, **kw):
    return laurent(step, **kw).filter(lambda p: not p.is_zero())
