"""Truncated elements of the Habiro ring and of its extension by ``q^{1/4}``.

A :class:`HabiroElement` stands for ``q^{e/4} * sum_{n=0}^{N} f_n(q) (q;q)_n``
known modulo ``(q;q)_{N+1}``.  The series part is kept in the unique canonical
form where every ``f_n`` is an honest polynomial in ``q`` of degree at most
``n``; ``Z[q]/((q;q)_{N+1})`` has exactly this basis, which makes exact
comparison of two truncations a coordinate comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .cyclo import CycNumber, RootSpec, ev_root, q_order
from .qpoly import ONE, ZERO, LaurentPoly, qpochhammer, unbalanced

__all__ = [
    "HabiroError",
    "InsufficientTruncationError",
    "IncompatiblePrefactorError",
    "HabiroElement",
    "canonical_terms",
    "h_add",
    "h_mul",
    "h_eval",
    "h_taylor",
    "h_equal",
    "kz_series",
    "taylor_at_one",
]


class HabiroError(ValueError):
    pass


class InsufficientTruncationError(HabiroError):
    pass


class IncompatiblePrefactorError(HabiroError):
    pass


def _check_integral(p: LaurentPoly) -> None:
    if p and p.exponent_classes() != {0}:
        raise HabiroError(f"series coefficient {p.pretty()} is not in Z[q^(+-1)]")


def canonical_terms(coeffs: Sequence[LaurentPoly], trunc: int) -> tuple[LaurentPoly, ...]:
    """Rewrite ``sum g_n (q;q)_n`` so that ``0 <= deg f_n <= n``, dropping ``(q;q)_{trunc+1}``.

    Each step splits ``g_n = r + s (1 - q^{n+1})`` with ``r`` the reduction of
    ``g_n`` modulo ``q^{n+1} - 1``; ``s`` is carried to the next index.
    """
    out = []
    carry = ZERO
    for n in range(trunc + 1):
        g = coeffs[n] if n < len(coeffs) else ZERO
        g = g + carry
        if g.is_zero():
            out.append(ZERO)
            carry = ZERO
            continue
        _check_integral(g)
        period = 4 * (n + 1)
        r = g.fold(period)
        out.append(r)
        diff = g - r
        carry = diff.exact_div(unbalanced(n + 1)) if diff else ZERO
    return tuple(out)


@dataclass(frozen=True)
class HabiroElement:
    """``q^{prefactor_e/4} * sum_n terms[n] (q;q)_n`` modulo ``(q;q)_{trunc+1}``."""

    prefactor_e: int
    terms: tuple[LaurentPoly, ...]
    trunc: int

    def __post_init__(self):
        if self.trunc < 0:
            raise HabiroError("truncation order must be nonnegative")
        if len(self.terms) != self.trunc + 1:
            raise HabiroError("need exactly trunc + 1 series coefficients")

    # ------------------------------------------------------------ builders
    @classmethod
    def from_terms(cls, coeffs: Sequence[LaurentPoly], trunc: int, prefactor_e: int = 0) -> "HabiroElement":
        return cls(prefactor_e, canonical_terms(coeffs, trunc), trunc)

    @classmethod
    def constant(cls, c: int | LaurentPoly, trunc: int) -> "HabiroElement":
        return cls.from_laurent(LaurentPoly.coerce(c), trunc)

    @classmethod
    def from_laurent(cls, p: LaurentPoly, trunc: int) -> "HabiroElement":
        """Embed a Laurent polynomial whose exponents share one class mod 4."""
        if p.is_zero():
            return cls.from_terms([], trunc)
        classes = p.exponent_classes()
        if len(classes) != 1:
            raise IncompatiblePrefactorError(f"{p.pretty()} mixes quarter-power classes {sorted(classes)}")
        (c,) = classes
        return cls.from_terms([p.shift(-c)], trunc, prefactor_e=c)

    # ------------------------------------------------------------ helpers
    def normalized(self) -> "HabiroElement":
        """Fold integral powers of ``q`` out of the prefactor (``0 <= e < 4``)."""
        c = self.prefactor_e % 4
        if c == self.prefactor_e:
            return self
        shift = self.prefactor_e - c
        return HabiroElement.from_terms([t.shift(shift) for t in self.terms], self.trunc, c)

    def truncate(self, trunc: int) -> "HabiroElement":
        if trunc > self.trunc:
            raise InsufficientTruncationError(f"cannot extend truncation {self.trunc} to {trunc}")
        return HabiroElement.from_terms(self.terms[: trunc + 1], trunc, self.prefactor_e)

    def series_value(self, upto: int | None = None) -> LaurentPoly:
        """``sum_{n <= upto} f_n (q;q)_n`` as an exact Laurent polynomial (no prefactor)."""
        upto = self.trunc if upto is None else min(upto, self.trunc)
        total = ZERO
        for n in range(upto + 1):
            if self.terms[n]:
                total = total + self.terms[n] * qpochhammer(n)
        return total

    def is_zero(self) -> bool:
        return all(t.is_zero() for t in self.terms)

    def shift_prefactor(self, e: int) -> "HabiroElement":
        return HabiroElement(self.prefactor_e + e, self.terms, self.trunc)

    def __add__(self, other: "HabiroElement") -> "HabiroElement":
        return h_add(self, other)

    def __neg__(self) -> "HabiroElement":
        return HabiroElement(self.prefactor_e, tuple(-t for t in self.terms), self.trunc)

    def __sub__(self, other: "HabiroElement") -> "HabiroElement":
        return h_add(self, -other)

    def __mul__(self, other: "HabiroElement") -> "HabiroElement":
        return h_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HabiroElement):
            return NotImplemented
        if self.trunc != other.trunc:
            return False
        a, b = self.normalized(), other.normalized()
        return a.prefactor_e == b.prefactor_e and a.terms == b.terms or (a.is_zero() and b.is_zero())

    def __hash__(self) -> int:
        a = self.normalized()
        return hash((a.prefactor_e, a.terms, a.trunc))

    # ------------------------------------------------------- serialization
    def to_json(self) -> dict:
        return {
            "prefactor_e": self.prefactor_e,
            "trunc": self.trunc,
            "terms": [t.to_json() for t in self.terms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HabiroElement":
        terms = [LaurentPoly.from_json(t) for t in data["terms"]]
        trunc = int(data["trunc"])
        return cls.from_terms(terms, trunc, int(data["prefactor_e"]))

    def pretty(self) -> str:
        body = " + ".join(
            f"({t.pretty()})*(q;q)_{n}" if n else f"({t.pretty()})" for n, t in enumerate(self.terms) if t
        ) or "0"
        pre = "" if self.prefactor_e == 0 else f"q^({self.prefactor_e}/4) * "
        return f"{pre}[{body}] + O((q;q)_{self.trunc + 1})"


def h_add(a: HabiroElement, b: HabiroElement) -> HabiroElement:
    d = a.prefactor_e - b.prefactor_e
    if d % 4:
        raise IncompatiblePrefactorError(
            f"prefactors q^({a.prefactor_e}/4) and q^({b.prefactor_e}/4) differ by a non-integral power of q"
        )
    trunc = min(a.trunc, b.trunc)
    if d >= 0:
        base, ta, tb = b.prefactor_e, [t.shift(d) for t in a.terms], list(b.terms)
    else:
        base, ta, tb = a.prefactor_e, list(a.terms), [t.shift(-d) for t in b.terms]
    coeffs = [ta[n] + tb[n] for n in range(trunc + 1)]
    return HabiroElement.from_terms(coeffs, trunc, base)


def h_mul(a: HabiroElement, b: HabiroElement) -> HabiroElement:
    """Product; ``(q;q)_i (q;q)_j`` is placed at index ``max(i, j)`` and re-canonicalized."""
    trunc = min(a.trunc, b.trunc)
    coeffs = [ZERO] * (trunc + 1)
    for i in range(trunc + 1):
        ai = a.terms[i]
        if not ai:
            continue
        for j in range(trunc + 1):
            bj = b.terms[j]
            if not bj:
                continue
            lo, hi = min(i, j), max(i, j)
            coeffs[hi] = coeffs[hi] + ai * bj * qpochhammer(lo)
    return HabiroElement.from_terms(coeffs, trunc, a.prefactor_e + b.prefactor_e)


def h_eval(f: HabiroElement, r: RootSpec | int) -> CycNumber:
    """Value at ``q^{1/4} = xi_m``; only terms below the order of ``q`` survive."""
    r = r if isinstance(r, RootSpec) else RootSpec(int(r))
    d = q_order(r.m)
    if f.trunc < d:
        raise InsufficientTruncationError(
            f"evaluation where q has order {d} needs truncation >= {d}, have {f.trunc}"
        )
    value = f.series_value(upto=d - 1).shift(f.prefactor_e)
    return ev_root(value, r)


def taylor_at_one(p: LaurentPoly, order: int) -> list[int]:
    """Coefficients of ``p`` expanded in powers of ``q - 1`` up to ``order``.

    ``p`` must lie in ``Z[q^{+-1}]``; ``q^a = (1 + t)^a`` uses generalized binomials.
    """
    out = [0] * (order + 1)
    for e, c in p.as_dict().items():
        if e % 4:
            raise HabiroError("Taylor expansion at q=1 needs integral powers of q")
        a = e // 4
        for i in range(order + 1):
            out[i] += c * _gen_binom(a, i)
    return out


def _gen_binom(a: int, i: int) -> int:
    if a >= 0:
        return comb(a, i)
    # binom(-m, i) = (-1)^i binom(m + i - 1, i)
    return (-1) ** i * comb(-a + i - 1, i)


def h_taylor(f: HabiroElement, order: int) -> list[int]:
    if order < 0:
        raise HabiroError("order must be nonnegative")
    if order > f.trunc:
        raise InsufficientTruncationError(f"Taylor order {order} exceeds truncation {f.trunc}")
    if f.prefactor_e % 4:
        raise HabiroError(
            f"prefactor q^({f.prefactor_e}/4) has no expansion in Z[[q-1]]"
        )
    value = f.series_value(upto=order).shift(f.prefactor_e)
    return taylor_at_one(value, order)


def h_equal(a: HabiroElement, b: HabiroElement, bound: int | None = None) -> bool:
    """Bounded equality test: evaluations at ``q^{1/4}`` of order ``4d`` (``d <= bound``)
    and Taylor coefficients at ``q = 1`` up to ``bound``.

    A ``True`` verdict is only as strong as the bound.  When the prefactor
    classes differ the Taylor comparison is skipped and only the evaluations
    decide.
    """
    if bound is None:
        bound = min(a.trunc, b.trunc)
    if bound < 1:
        raise HabiroError("bound must be positive")
    if a.trunc < bound or b.trunc < bound:
        raise InsufficientTruncationError(f"both truncations must be >= {bound}")
    for d in range(1, bound + 1):
        r = RootSpec(4 * d)
        if h_eval(a, r) != h_eval(b, r):
            return False
    ca, cb = a.prefactor_e % 4, b.prefactor_e % 4
    if ca == cb:
        ta = h_taylor(a.shift_prefactor(-ca), bound)
        tb = h_taylor(b.shift_prefactor(-cb), bound)
        if ta != tb:
            return False
    return True


def kz_series(N: int) -> HabiroElement:
    """Truncation of ``sum_n (q;q)_n``."""
    if N < 0:
        raise HabiroError("N must be nonnegative")
    return HabiroElement(0, tuple([ONE] * (N + 1)), N)
