"""Surgery series in the Habiro ring, Gauss sums, the Laplace transform and WRT state sums.

Surgery weights.  For a surgery component with framing ``f = +-1`` the color
``P'_l`` is weighted by ``(-f q)^{-f l(l+3)/4}``; multiplied by the pairing
factor ``{2l+1}!/({l}!{1})`` this is the integral-exponent quantity
:func:`omega_term`::

    f = -1:   (-1)^l q^{-l(l+1)/2} {2l+1}_-! / ({l}_-! {1}_-)
    f = +1:   q^{-l(l+2)}         {2l+1}_-! / ({l}_-! {1}_-)

Here ``(-q)^{-l(l+3)/4}`` is read as ``(-1)^l q^{-l(l+3)/4}``, the coefficient
of ``P'_l`` in ``omega^{-1}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

from .cyclo import CycNumber, RootSpec, ev_root
from .cyclojones import (
    CyclotomicCoeffs,
    LinkPairingTable,
    TableCoverageError,
    pprime_factor,
)
from .fixtures import load_knot, read_json
from .habiro import HabiroElement, IncompatiblePrefactorError, h_eval
from .qpoly import (
    ONE,
    ZERO,
    InexactDivisionError,
    LaurentPoly,
    RationalPoly,
    brace,
    bracket,
    cnk,
    factorial,
    qpochhammer,
)

__all__ = [
    "SurgeryError",
    "DegenerateRootError",
    "SurgeryPresentation",
    "omega_term",
    "balanced_weight",
    "surgery_knot",
    "surgery_relative",
    "framing_shift",
    "gauss_sum",
    "laplace",
    "NPoly",
    "laplace_poly",
    "colored_link_value",
    "wrt_state_sum",
    "evaluation_pair",
    "check_evaluation",
]


class SurgeryError(ValueError):
    pass


class DegenerateRootError(SurgeryError):
    pass


def _check_framing(f: int) -> None:
    if f not in (1, -1):
        raise SurgeryError(f"surgery framing must be +1 or -1, got {f}")


@lru_cache(maxsize=None)
def _unbalanced_ratio(l: int) -> LaurentPoly:
    """``{2l+1}_-! / ({l}_-! {1}_-)``."""
    return factorial("unbalanced", 2 * l + 1).exact_div(factorial("unbalanced", l) * factorial("unbalanced", 1))


@lru_cache(maxsize=None)
def omega_term(f: int, l: int) -> LaurentPoly:
    """Weight of ``J(..., P''_l, ...)`` for a surgery component of framing ``f``."""
    _check_framing(f)
    if l < 0:
        raise ValueError("l must be nonnegative")
    if f == -1:
        return _unbalanced_ratio(l).shift(-2 * l * (l + 1)) * (-1) ** l
    return _unbalanced_ratio(l).shift(-4 * l * (l + 2))


def balanced_weight(f: int, l: int) -> LaurentPoly:
    """``(-f q)^{-f l(l+3)/4}`` as a quarter-power monomial."""
    _check_framing(f)
    if f == -1:
        return LaurentPoly.monomial(l * (l + 3))
    return LaurentPoly.monomial(-l * (l + 3), (-1) ** l)


def surgery_knot(C: CyclotomicCoeffs, f: int, N: int) -> HabiroElement:
    """``J`` of ``f``-surgery on a knot, truncated modulo ``(q;q)_{N+1}``."""
    _check_framing(f)
    if N < 0:
        raise ValueError("truncation must be nonnegative")
    if C.kmax < N:
        raise TableCoverageError(f"{C.knot_name}: truncation {N} needs C(k) for k <= {N}, have {C.kmax}")
    terms = []
    for k in range(N + 1):
        if C[k]:
            terms.append(C[k] * omega_term(f, k).exact_div(qpochhammer(k)))
        else:
            terms.append(ZERO)
    return HabiroElement.from_terms(terms, N)


def framing_shift(J: HabiroElement, f: int, n: int) -> HabiroElement:
    """Multiply by ``q^{f(n^2-1)/4}``, the effect of changing the framing by ``f``."""
    return J.shift_prefactor(f * (n * n - 1))


@dataclass(frozen=True)
class SurgeryPresentation:
    """``r`` colored 0-framed components and ``s`` surgery components of framings ``+-1``."""

    name: str
    framings: tuple[int, ...]
    pairing: LinkPairingTable
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "framings", tuple(int(f) for f in self.framings))
        for f in self.framings:
            _check_framing(f)
        if self.pairing.dims[1] != len(self.framings):
            raise SurgeryError(
                f"pairing table has {self.pairing.dims[1]} surgery slots but {len(self.framings)} framings"
            )

    @property
    def r(self) -> int:
        return self.pairing.dims[0]

    @property
    def s(self) -> int:
        return self.pairing.dims[1]

    @classmethod
    def knot_surgery(cls, C: CyclotomicCoeffs, f: int, colored: CyclotomicCoeffs | None = None) -> "SurgeryPresentation":
        """``f``-surgery on a knot, optionally with a split colored knot alongside."""
        table = LinkPairingTable.knot(C, "surgery")
        name = f"{C.knot_name}({f:+d})"
        if colored is not None:
            table = LinkPairingTable.knot(colored, "colored").split_union(table)
            name = f"{colored.knot_name} in {name}"
        return cls(name, (f,), table)

    def add_split_unknot(self, f: int, kmax: int | None = None) -> "SurgeryPresentation":
        """Add a split unknot with framing ``f``, a presentation of the same manifold."""
        if kmax is None:
            kmax = max(self.pairing.bounds() or (0,))
        unknot = LinkPairingTable.knot(CyclotomicCoeffs.unknot(kmax), "surgery")
        return SurgeryPresentation(self.name + f"+U({f:+d})", self.framings + (f,), self.pairing.split_union(unknot))

    # ------------------------------------------------------------ file I/O
    def to_json(self) -> dict:
        return {
            "name": self.name,
            "r": self.r,
            "s": self.s,
            "framings": list(self.framings),
            "pairing": self.pairing.to_json(),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SurgeryPresentation":
        if "knot" in data:
            C = load_knot(data["knot"]).coeffs
            colored = load_knot(data["colored"]).coeffs if data.get("colored") else None
            return cls.knot_surgery(C, int(data.get("framing", 1)), colored)
        table = LinkPairingTable.from_json(data["pairing"], str(data.get("name", "")))
        pres = cls(str(data.get("name", "")), tuple(data["framings"]), table)
        if "r" in data and int(data["r"]) != pres.r or "s" in data and int(data["s"]) != pres.s:
            raise SurgeryError("r/s fields disagree with the pairing table dims")
        return pres

    @classmethod
    def load(cls, name_or_path: str) -> "SurgeryPresentation":
        return cls.from_json(read_json(name_or_path))


def _colors_ok(p: SurgeryPresentation, colors: Sequence[int]) -> tuple[int, ...]:
    colors = tuple(int(n) for n in colors)
    if len(colors) != p.r:
        raise SurgeryError(f"presentation has {p.r} colored components, got {len(colors)} colors")
    if any(n < 1 for n in colors):
        raise SurgeryError("colors must be positive")
    return colors


def _cnk_prefactor(colors: Sequence[int], ks: Sequence[int]) -> LaurentPoly:
    out = ONE
    for n, k in zip(colors, ks):
        out = out * cnk(n, k).exact_div(brace(1))
    return out


def surgery_relative(p: SurgeryPresentation, colors: Sequence[int], N: int) -> HabiroElement:
    """``J_{L^(0)}(n_1..n_r, omega^{-f_1}..omega^{-f_s})`` truncated modulo ``(q;q)_{N+1}``.

    Each surgery index tuple ``l`` contributes a term divisible by
    ``(q;q)_{max l}``; it is stored at that index (or at index 0 when the
    division is not exact, which only costs canonicalization time).
    """
    colors = _colors_ok(p, colors)
    if N < 0:
        raise ValueError("truncation must be nonnegative")
    k_ranges = [range(n) for n in colors]
    terms: list[LaurentPoly] = [ZERO] * (N + 1)
    prefactor: int | None = None
    for ls in itertools.product(range(N + 1), repeat=p.s):
        weight = ONE
        for f, l in zip(p.framings, ls):
            weight = weight * balanced_weight(f, l)
        acc = RationalPoly(ZERO)
        for ks in itertools.product(*k_ranges):
            entry = p.pairing.get(ks, ls)
            if entry.is_zero():
                continue
            acc = acc + entry * _cnk_prefactor(colors, ks)
        if acc.is_zero():
            continue
        try:
            value = (acc * weight).to_laurent()
        except InexactDivisionError:
            raise SurgeryError(f"term l={ls} is not a Laurent polynomial; the table violates integrality") from None
        if value.is_zero():
            continue
        classes = value.exponent_classes()
        if len(classes) != 1:
            raise IncompatiblePrefactorError(f"term l={ls} mixes quarter-power classes {sorted(classes)}")
        (c,) = classes
        if prefactor is None:
            prefactor = c
        elif c != prefactor:
            raise IncompatiblePrefactorError("surgery terms fall in different quarter-power classes")
        body = value.shift(-c)
        m = max(ls) if ls else 0
        try:
            terms[m] = terms[m] + body.exact_div(qpochhammer(m))
        except InexactDivisionError:
            terms[0] = terms[0] + body
    return HabiroElement.from_terms(terms, N, prefactor or 0)


# ---------------------------------------------------------------- roots of unity


def _root(d: int) -> RootSpec:
    if d < 1:
        raise DegenerateRootError("root parameter d must be positive")
    return RootSpec.from_d(d)


def gauss_sum(f: int, d: int) -> CycNumber:
    """``gamma_f = sum_{k=1}^{4d} q^{f(k^2-1)/4}`` at ``q^{1/4}`` of order ``4d``."""
    _check_framing(f)
    r = _root(d)
    total = ZERO
    for k in range(1, 4 * d + 1):
        total = total + LaurentPoly.monomial(f * (k * k - 1))
    value = ev_root(total, r)
    if value.is_zero():
        raise SurgeryError(f"Gauss sum vanished at d={d}; expected nonzero")
    return value


def laplace(f: int, a: int, b: int) -> LaurentPoly:
    """``L_f(q^{na+b}) = q^{b - f a^2}``."""
    return LaurentPoly.monomial(4 * (b - f * a * a))


class NPoly:
    """Finite sum ``sum_a c_a(q) q^{n a/2}``: a polynomial in ``q^{n/2}`` with Laurent coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, LaurentPoly] | None = None):
        self.terms = {a: LaurentPoly.coerce(c) for a, c in (terms or {}).items() if c}

    @classmethod
    def brace_shift(cls, c: int) -> "NPoly":
        """``{n + c} = q^{c/2} q^{n/2} - q^{-c/2} q^{-n/2}``."""
        return cls({1: LaurentPoly.monomial(2 * c), -1: LaurentPoly.monomial(-2 * c, -1)})

    def __mul__(self, other: "NPoly") -> "NPoly":
        out: dict[int, LaurentPoly] = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                out[a + b] = out.get(a + b, ZERO) + x * y
        return NPoly(out)

    def __add__(self, other: "NPoly") -> "NPoly":
        out = dict(self.terms)
        for a, y in other.terms.items():
            out[a] = out.get(a, ZERO) + y
        return NPoly(out)

    def at(self, n: int) -> LaurentPoly:
        total = ZERO
        for a, c in self.terms.items():
            total = total + c.shift(2 * a * n)
        return total


def laplace_poly(f: int, p: NPoly) -> LaurentPoly:
    """Apply ``L_f`` term by term; needs integral powers of ``q^n``."""
    total = ZERO
    for a2, c in p.terms.items():
        if a2 % 2:
            raise SurgeryError("Laplace transform needs integral powers of q^n")
        a = a2 // 2
        total = total + c.shift(-4 * f * a * a)
    return total


def colored_link_value(p: SurgeryPresentation, colors: Sequence[int], mcolors: Sequence[int], d: int | None = None) -> RationalPoly:
    """``J_{L^(0)}(n_1..n_r, m_1..m_s)`` rebuilt from the pairing table.

    With ``d`` given, surgery indices ``l`` with ``2l+1 >= d`` are dropped:
    ``C(m, l)`` then contains a factor ``{j}`` with ``d | j`` and vanishes at
    any ``q`` of order ``d``.  The result is then only valid at such roots.
    """
    r, s = p.pairing.dims
    lmax = [m - 1 for m in mcolors]
    if d is not None:
        cut = (d - 2) // 2
        lmax = [min(x, cut) for x in lmax]
    total = RationalPoly(ZERO)
    for ks in itertools.product(*(range(n) for n in colors)):
        kf = _cnk_prefactor(colors, ks)
        for ls in itertools.product(*(range(x + 1) for x in lmax)):
            entry = p.pairing.get(ks, ls)
            if entry.is_zero():
                continue
            lf = ONE
            den = ONE
            for m, l in zip(mcolors, ls):
                lf = lf * cnk(m, l).exact_div(brace(1))
                den = den * pprime_factor(l)
            total = total + entry * RationalPoly(kf * lf, den)
    return total


def wrt_state_sum(p: SurgeryPresentation, colors: Sequence[int], d: int) -> CycNumber:
    """WRT invariant of ``(N, L)`` at ``q^{1/4}`` of order ``4d`` as an exact cyclotomic number."""
    colors = _colors_ok(p, colors)
    if d < 2:
        raise DegenerateRootError("WRT state sum needs d >= 2 ({1} vanishes at q = 1)")
    r = RootSpec.from_d(d)
    span = range(1, 4 * d + 1)
    comp_weight = {
        (f, m): ev_root(bracket(m) * LaurentPoly.monomial(f * (m * m - 1)), r) for f in set(p.framings) for m in span
    }
    numerator = CycNumber.zero(r.m)
    for ms in itertools.product(span, repeat=p.s):
        val = colored_link_value(p, colors, ms, d)
        if val.is_zero():
            continue
        z = ev_root(val.num, r) / ev_root(val.den, r)
        for f, m in zip(p.framings, ms):
            z = z * comp_weight[f, m]
        numerator = numerator + z
    denominator = CycNumber.one(r.m)
    for f in p.framings:
        den_f = CycNumber.zero(r.m)
        for m in span:
            den_f = den_f + comp_weight[f, m] * ev_root(bracket(m), r)
        if den_f.is_zero():
            raise SurgeryError(f"state-sum denominator vanished for framing {f} at d={d}")
        denominator = denominator * den_f
    result = numerator / denominator
    if not result.is_integral():
        raise SurgeryError(f"WRT value at d={d} is not in Z[xi]; conventions are inconsistent")
    return result


def evaluation_pair(p: SurgeryPresentation, colors: Sequence[int], d: int, N: int | None = None) -> tuple[CycNumber, CycNumber]:
    """``(h_eval(surgery series), wrt_state_sum)`` at the root of order ``4d``."""
    N = d if N is None else N
    if N < d:
        raise SurgeryError(f"truncation {N} below q-order {d}")
    series = surgery_relative(p, colors, N)
    return h_eval(series, RootSpec.from_d(d)), wrt_state_sum(p, colors, d)


def check_evaluation(p: SurgeryPresentation, colors: Sequence[int], d: int, N: int | None = None) -> bool:
    a, b = evaluation_pair(p, colors, d, N)
    return a == b
