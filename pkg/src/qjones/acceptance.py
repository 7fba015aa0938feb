"""Executable acceptance checks.

Each check returns one or more :class:`Check` rows.  ``run_all`` prints one
PASS/FAIL line per row and is what ``qjones selftest`` calls.  Checks marked
``expected_fail`` encode a statement known to be false as written; their
failure is reported but does not fail the run.
"""

from __future__ import annotations

import random
import time
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

from .cyclo import CycNumber, RootSpec, ev_root
from .cyclojones import (
    CyclotomicCoeffs,
    colored_jones,
    ctilde,
    cyclotomic_solve,
    integrality_check,
    parity_class,
    pprime_factor,
    r_coeff,
)
from .fixtures import fixture_path, load_knot, read_json
from .habiro import h_equal, h_eval, h_taylor, kz_series
from .ore import APoly, Sequence, aj_compare, builtin_seq, guess_recurrence, specialize_q1, verify_recurrence
from .qpoly import ONE, ZERO, LaurentPoly, brace, bracket, cnk, factorial
from .skein import jones_from_pd
from .surgery import (
    NPoly,
    SurgeryPresentation,
    balanced_weight,
    check_evaluation,
    gauss_sum,
    laplace,
    laplace_poly,
    evaluation_pair,
    omega_term,
)

__all__ = ["Check", "CRITERIA", "run_all", "figure8_recurrence"]

KNOTS = ("unknot", "trefoil", "figure8")


@dataclass(frozen=True)
class Check:
    criterion: int
    name: str
    passed: bool
    detail: str = ""
    expected_fail: bool = False

    @property
    def ok(self) -> bool:
        return self.passed != self.expected_fail

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        if self.expected_fail:
            status += " (expected)" if not self.passed else " (unexpected pass)"
        tail = f" -- {self.detail}" if self.detail else ""
        return f"[{status}] {self.criterion:>2}. {self.name}{tail}"


def _coeffs(name: str) -> CyclotomicCoeffs:
    return load_knot(name).coeffs


# ------------------------------------------------------------------ criteria


def unknot_normalization() -> list[Check]:
    U = _coeffs("unknot")
    bad = [n for n in range(1, 21) if colored_jones(U, n) != bracket(n)]
    d = load_knot("unknot").diagram
    j = jones_from_pd(d)
    return [
        Check(1, "colored Jones of the unknot is [n] for n <= 20", not bad, f"mismatch at {bad}" if bad else ""),
        Check(1, "Jones of the 0-crossing diagram is q^(1/2)+q^(-1/2)", j == bracket(2), j.pretty()),
    ]


def orthogonality() -> list[Check]:
    # every R(n,k) denominator {n+1-k}!{n+1+k}! divides D = {n}!{2n+2}!, so compare D * sum with D * delta
    bad = []
    for n in range(1, 13):
        D = factorial("brace", n) * factorial("brace", 2 * n + 2)
        scaled = [(k, (r_coeff(n, k).num * D).exact_div(r_coeff(n, k).den)) for k in range(1, n + 2)]
        for m in range(1, 13):
            total = ZERO
            for k, Rk in scaled:
                total = total + Rk * cnk(k, m).exact_div(brace(1))
            if total != (D if n == m else ZERO):
                bad.append((n, m))
    return [Check(2, "sum_k R(n,k) C(k,m)/{1} = delta(n,m), 1 <= n,m <= 12", not bad, f"failures {bad[:5]}" if bad else "")]


def unbalanced_identities() -> list[Check]:
    bad1, bad2 = [], []
    for n in range(0, 21):
        lhs = pprime_factor(n)
        if lhs * balanced_weight(-1, n) != omega_term(-1, n):
            bad1.append(n)
        if lhs * balanced_weight(1, n) != omega_term(1, n):
            bad2.append(n)
    return [
        Check(3, "q^(n(n+3)/4){2n+1}!/({n}!{1}) = (-1)^n q^(-n(n+1)/2){2n+1}_-!/({n}_-!{1}_-), n <= 20", not bad1, str(bad1 or "")),
        Check(3, "(-1)^n q^(-n(n+3)/4){2n+1}!/({n}!{1}) = q^(-n(n+2)){2n+1}_-!/({n}_-!{1}_-), n <= 20", not bad2, str(bad2 or "")),
    ]


def _sum_over_colors(f: int, d: int, term: Callable[[int], LaurentPoly]) -> CycNumber:
    r = RootSpec.from_d(d)
    total = CycNumber.zero(r.m)
    for n in range(1, 4 * d + 1):
        total = total + ev_root(LaurentPoly.monomial(f * (n * n - 1)) * term(n), r)
    return total


def _bbl_npoly(k: int) -> NPoly:
    """``{n} prod_{j=-k}^{k} {n+j}`` as a polynomial in ``q^{n/2}``."""
    p = NPoly.brace_shift(0)
    for j in range(-k, k + 1):
        p = p * NPoly.brace_shift(j)
    return p


def laplace_suite() -> list[Check]:
    lemma_bad, bbl_lit_bad, bbl_fix_bad, cor_bad = [], [], [], []
    for f in (1, -1):
        for d in range(2, 7):
            r = RootSpec.from_d(d)
            gamma = gauss_sum(f, d)
            for a in range(-3, 4):
                for b in range(-2, 3):
                    lhs = _sum_over_colors(f, d, lambda n: LaurentPoly.monomial(4 * (b + n * a)))
                    if lhs != gamma * ev_root(laplace(f, a, b), r):
                        lemma_bad.append((f, d, a, b))
            one = ev_root(brace(1), r)
            denom = _sum_over_colors(f, d, lambda n: bracket(n) * bracket(n))
            for k in range(d):
                W = ev_root(balanced_weight(f, k) * pprime_factor(k), r)
                factor = ev_root(LaurentPoly.monomial(-4 * f) - 1, r) * 2
                transformed = ev_root(laplace_poly(f, _bbl_npoly(k)), r) / (one * one)
                if transformed != factor * W:
                    bbl_lit_bad.append((f, d, k))
                if transformed * one * one != factor * W:
                    bbl_fix_bad.append((f, d, k))
                num = _sum_over_colors(f, d, lambda n: bracket(n) * cnk(n, k).exact_div(brace(1)))
                if num / denom != W:
                    cor_bad.append((f, d, k))
    return [
        Check(4, "Gauss-sum Laplace lemma, f=+-1, d<=6, a in [-3,3], b in [-2,2]", not lemma_bad, str(lemma_bad[:5] or "")),
        Check(
            4,
            "L([n]C(n,k)/{1}) = 2(q^-f - 1) W_k as stated, d<=6, k<d",
            not bbl_lit_bad,
            f"{len(bbl_lit_bad)} cases differ by the factor {{1}}^2" if bbl_lit_bad else "",
            expected_fail=True,
        ),
        Check(4, "L({n}C(n,k)) = 2(q^-f - 1) W_k (corrected normalization), d<=6, k<d", not bbl_fix_bad, str(bbl_fix_bad[:5] or "")),
        Check(4, "Gauss-sum ratio equals (-fq)^(-fk(k+3)/4){2k+1}!/({k}!{1}), d<=6, k<d", not cor_bad, str(cor_bad[:5] or "")),
    ]


def evaluation_consistency() -> list[Check]:
    bad = []
    unknot_values = []
    for name in KNOTS:
        C = _coeffs(name)
        for f in (1, -1):
            p = SurgeryPresentation.knot_surgery(C, f)
            for d in range(2, 6):
                if not check_evaluation(p, (), d):
                    bad.append((name, f, d))
                if name == "unknot":
                    a, b = evaluation_pair(p, (), d)
                    unknot_values.append(a == CycNumber.one(a.m) and b == CycNumber.one(b.m))
    return [
        Check(5, "h_eval(surgery series) = WRT state sum, 3 knots x f=+-1 x d=2..5", not bad, str(bad or "")),
        Check(5, "unknot surgery gives 1 on both sides", all(unknot_values)),
    ]


def integrality() -> list[Check]:
    nonint, ct_bad, val_bad = [], [], []
    for name in KNOTS:
        C = _coeffs(name)
        if C.nonintegral():
            nonint.append(name)
        if not integrality_check(ctilde(C)[:11]).passed:
            ct_bad.append(name)
        for f in (1, -1):
            for k in range(11):
                raw = C[k] * omega_term(f, k)
                if not ((ONE - LaurentPoly.monomial(4)) ** k).divides(raw):
                    val_bad.append((name, f, k))
    return [
        Check(6, "fixture C(k) lie in Z[q^(+-1)]", not nonint, str(nonint or "")),
        Check(6, "C~(k) divisible by {2k+1}!/({k}!{1}), k <= 10", not ct_bad, str(ct_bad or "")),
        Check(6, "surgery series term k carries (q;q)_k (valuation >= k), k <= 10", not val_bad, str(val_bad or "")),
    ]


def round_trip() -> list[Check]:
    bad = []
    for name in KNOTS:
        C = _coeffs(name).truncate(8)
        if cyclotomic_solve([colored_jones(C, n) for n in range(1, 10)], name).coeffs != C.coeffs:
            bad.append(name)
    rng = random.Random(20261014)
    for trial in range(20):
        K = rng.randint(0, 5)
        coeffs = []
        for _ in range(K + 1):
            terms = {4 * rng.randint(-4, 4): rng.randint(-3, 3) for _ in range(rng.randint(1, 3))}
            coeffs.append(LaurentPoly(terms))
        C = CyclotomicCoeffs(f"random{trial}", tuple(coeffs))
        if cyclotomic_solve([colored_jones(C, n) for n in range(1, K + 2)]).coeffs != C.coeffs:
            bad.append(f"random{trial}")
    J2 = LaurentPoly({10: 1, -10: 1})
    fig = cyclotomic_solve([ONE, J2], "figure8").coeffs
    return [
        Check(7, "cyclotomic_solve(colored_jones(C)) = C for fixtures and 20 random C", not bad, str(bad or "")),
        Check(7, "figure-8 from J(1)=1, J(2)=q^(5/2)+q^(-5/2) gives C(0)=C(1)=1", fig == (ONE, ONE), str([c.pretty() for c in fig])),
    ]


@lru_cache(maxsize=None)
def figure8_recurrence():
    """Guessed recurrence of the figure-8 colored Jones function (trained on n <= 14)."""
    C = _coeffs("figure8")
    J = Sequence("laurent", lambda n: colored_jones(C, n), "figure8")
    with warnings.catch_warnings():
        # 2*dM = n_train triggers the overfitting warning; the held-out check in criterion 8 settles it
        warnings.simplefilter("ignore", UserWarning)
        P = guess_recurrence(J, 3, 7, 14, method="integer")
    return P, J


_BUILTIN_GUESSES = (
    ("bracket", 1, 2),
    ("bracket", 2, 0),
    ("brace", 2, 0),
    ("bracket_factorial", 1, 2),
    ("brace_factorial", 1, 2),
    ("qbinom_diag", 1, 4),
    ("delta(3)", 1, 1),
)


def recurrence_engine() -> list[Check]:
    P = guess_recurrence(builtin_seq("bracket"), 1, 2, 20, method="field")
    expected = {1: {(2, 2): 1, (2, 0): -1}, 0: {(4, 2): -1, (0, 0): 1}}
    unit_ok = P is not None and P.integer_terms() == expected
    held_bad = []
    for name, dL, dM in _BUILTIN_GUESSES:
        f = builtin_seq(name)
        Q = guess_recurrence(f, dL, dM, 12, method="integer")
        if Q is None or not verify_recurrence(Q, f, 13, 22):
            held_bad.append(name)
    F, J = figure8_recurrence()
    fig_ok = F is not None and verify_recurrence(F, J, 15, 24)
    return [
        Check(8, "guess on [n] at (1,2) is (M^2-1)L - (q^(1/2)M^2 - q^(-1/2)) up to a unit", unit_ok, P.pretty() if P else "none"),
        Check(8, "builtin guesses annihilate 10 held-out terms", not held_bad, str(held_bad or "")),
        Check(8, "figure-8 guess (train n<=14) annihilates n = 15..24", fig_ok, F.pretty()[:60] + "..." if F else "none"),
    ]


def aj_check() -> list[Check]:
    U = guess_recurrence(builtin_seq("bracket"), 1, 2, 20)
    v = aj_compare(specialize_q1(U), APoly({(1, 0): 1, (0, 0): -1}))
    rows = [Check(9, "unknot: alpha(L,M,1) M-essentially equal to L-1", v.essentially_equal, str(v))]
    if not fixture_path("figure8_apoly").exists():
        warnings.warn("figure-8 A-polynomial fixture missing; AJ check skipped", stacklevel=2)
        rows.append(Check(9, "figure-8 AJ check skipped (no A-polynomial fixture)", True))
        return rows
    A = APoly.from_json(read_json("figure8_apoly"))
    F, _ = figure8_recurrence()
    w = aj_compare(specialize_q1(F), A)
    rows.append(Check(9, "figure-8: alpha(L,M,1) M-essentially equal to the supplied A-polynomial", w.essentially_equal, str(w)))
    return rows


def parity() -> list[Check]:
    bad = []
    for name in KNOTS:
        C = _coeffs(name)
        for n in range(1, 11):
            classes = colored_jones(C, n).exponent_classes()
            if classes != {parity_class(n)}:
                bad.append((name, n))
    return [Check(10, "colored Jones exponents lie in the predicted class mod 4, n <= 10", not bad, str(bad or ""))]


def presentation_independence() -> list[Check]:
    from .surgery import surgery_relative

    rows = []
    base = SurgeryPresentation.load("trefoil_surgery")
    x = surgery_relative(base, (), 6)
    for f in (1, -1):
        y = surgery_relative(base.add_split_unknot(f), (), 6)
        rows.append(Check(11, f"trefoil surgery with a split {f:+d}-framed unknot is h_equal at bound 6", h_equal(x, y, 6)))
    return rows


def habiro_suite() -> list[Check]:
    at1 = h_eval(kz_series(5), RootSpec.from_d(1))
    at2 = h_eval(kz_series(5), RootSpec.from_d(2))
    t5, t10, t20 = (h_taylor(kz_series(N), 5) for N in (5, 10, 20))
    return [
        Check(12, "kz_series evaluates to 1 at q = 1 and 3 at q = -1", at1 == CycNumber.one(at1.m) and at2 == CycNumber.one(at2.m) * 3),
        Check(12, "kz_series Taylor coefficients stable for truncation 5, 10, 20", t5 == t10 == t20 and t5[:3] == [1, -1, 2], str(t5)),
    ]


CRITERIA: tuple[Callable[[], list[Check]], ...] = (
    unknot_normalization,
    orthogonality,
    unbalanced_identities,
    laplace_suite,
    evaluation_consistency,
    integrality,
    round_trip,
    recurrence_engine,
    aj_check,
    parity,
    presentation_independence,
    habiro_suite,
)


def run_all(echo: Callable[[str], None] = print, only: Iterable[int] | None = None) -> list[Check]:
    only = set(only) if only is not None else None
    out = []
    for i, fn in enumerate(CRITERIA, start=1):
        if only is not None and i not in only:
            continue
        t0 = time.perf_counter()
        rows = fn()
        dt = time.perf_counter() - t0
        for row in rows:
            echo(row.line())
        echo(f"      ({fn.__name__}: {dt:.1f}s)")
        out.extend(rows)
    return out
