"""Exact colored Jones functions, Habiro-ring surgery series, WRT state sums and q-recurrences."""

from .cyclojones import CyclotomicCoeffs, colored_jones, cyclotomic_solve
from .fixtures import load_knot
from .habiro import HabiroElement, h_equal, h_eval, h_taylor, kz_series
from .ore import APoly, OrePoly, Sequence, aj_compare, builtin_seq, guess_recurrence, specialize_q1, verify_recurrence
from .qpoly import LaurentPoly, RationalPoly, brace, bracket
from .skein import Diagram, jones_from_pd, kauffman_bracket
from .surgery import SurgeryPresentation, check_evaluation, surgery_knot, surgery_relative, wrt_state_sum

__version__ = "0.1.0"

__all__ = [
    "APoly",
    "CyclotomicCoeffs",
    "Diagram",
    "HabiroElement",
    "LaurentPoly",
    "OrePoly",
    "RationalPoly",
    "Sequence",
    "SurgeryPresentation",
    "aj_compare",
    "brace",
    "bracket",
    "builtin_seq",
    "check_evaluation",
    "colored_jones",
    "cyclotomic_solve",
    "guess_recurrence",
    "h_equal",
    "h_eval",
    "h_taylor",
    "jones_from_pd",
    "kauffman_bracket",
    "kz_series",
    "load_knot",
    "specialize_q1",
    "surgery_knot",
    "surgery_relative",
    "verify_recurrence",
    "wrt_state_sum",
]
