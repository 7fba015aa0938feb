"""Cyclotomic expansions of colored Jones functions.

A knot ``K`` is described by its cyclotomic coefficients ``C(k) = J_K(P''_k)``
and then ``J_K(n) = sum_k C(k) C(n,k) / {1}``.  Links entering surgery
formulas are described by a :class:`LinkPairingTable` of values
``J(P''_{k_1}, ..., P''_{k_r}, P'_{l_1}, ..., P'_{l_s})``.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

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
)

__all__ = [
    "CyclotomicError",
    "InsufficientCoefficientsError",
    "CyclotomicInconsistencyError",
    "TableCoverageError",
    "CyclotomicCoeffs",
    "LinkPairingTable",
    "IntegralityReport",
    "colored_jones",
    "cyclotomic_solve",
    "pairing",
    "pprime_factor",
    "r_coeff",
    "ctilde",
    "integrality_check",
    "parity_class",
]


class CyclotomicError(ValueError):
    pass


class InsufficientCoefficientsError(CyclotomicError):
    pass


class CyclotomicInconsistencyError(CyclotomicError):
    pass


class TableCoverageError(CyclotomicError):
    pass


def _is_integral_q(p: LaurentPoly) -> bool:
    return p.is_zero() or p.exponent_classes() == {0}


@dataclass(frozen=True)
class CyclotomicCoeffs:
    """``C(0), ..., C(K_max)`` of a knot."""

    knot_name: str
    coeffs: tuple[LaurentPoly, ...]
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(LaurentPoly.coerce(c) for c in self.coeffs))
        if self.check:
            bad = self.nonintegral()
            if bad:
                raise CyclotomicError(
                    f"{self.knot_name}: C(k) not in Z[q^(+-1)] for k in {bad} "
                    "(cyclotomic coefficients of a knot are Laurent polynomials in q)"
                )

    @property
    def kmax(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> LaurentPoly:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def nonintegral(self) -> list[int]:
        return [k for k, c in enumerate(self.coeffs) if not _is_integral_q(c)]

    def truncate(self, kmax: int) -> "CyclotomicCoeffs":
        return CyclotomicCoeffs(self.knot_name, self.coeffs[: kmax + 1], self.check)

    @classmethod
    def unknot(cls, kmax: int = 16) -> "CyclotomicCoeffs":
        return cls("unknot", (ONE,) + (ZERO,) * kmax)

    def to_json(self) -> dict:
        return {"name": self.knot_name, "cyclotomic": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Mapping) -> "CyclotomicCoeffs":
        return cls(str(data.get("name", "")), tuple(LaurentPoly.from_json(c) for c in data["cyclotomic"]))


def colored_jones(C: CyclotomicCoeffs, n: int) -> LaurentPoly:
    """``J(n) = sum_{k<n} C(k) C(n,k)/{1}``; ``J(unknot, n) = [n]``."""
    if n < 1:
        raise ValueError("color must be a positive integer")
    if C.kmax < n - 1:
        raise InsufficientCoefficientsError(
            f"{C.knot_name}: color {n} needs C(k) for k <= {n - 1}, have k <= {C.kmax}"
        )
    total = ZERO
    for k in range(n):
        if C[k]:
            total = total + C[k] * cnk(n, k)
    return total.exact_div(brace(1))


def cyclotomic_solve(values: Sequence[LaurentPoly], name: str = "") -> CyclotomicCoeffs:
    """Invert the cyclotomic expansion given ``J(1), ..., J(N)``.

    The system is triangular: ``J(n){1} = sum_{k<n} C(k) C(n,k)`` with pivot
    ``C(n, n-1)``.  Non-integral solutions are returned with a warning.
    """
    coeffs: list[LaurentPoly] = []
    for n, jn in enumerate(values, start=1):
        rhs = LaurentPoly.coerce(jn) * brace(1)
        for k, c in enumerate(coeffs):
            if c:
                rhs = rhs - c * cnk(n, k)
        try:
            coeffs.append(rhs.exact_div(cnk(n, n - 1)))
        except InexactDivisionError:
            raise CyclotomicInconsistencyError(
                f"J({n}) is not of cyclotomic form: the residual is not divisible by C({n},{n - 1})"
            ) from None
    out = CyclotomicCoeffs(name, tuple(coeffs), check=False)
    bad = out.nonintegral()
    if bad:
        warnings.warn(f"recovered C(k) outside Z[q^(+-1)] for k in {bad}", stacklevel=2)
    return out


@lru_cache(maxsize=None)
def pprime_factor(k: int) -> LaurentPoly:
    """``{2k+1}! / ({k}! {1})``, the pairing of ``P'_k`` with ``S_k``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return factorial("brace", 2 * k + 1).exact_div(factorial("brace", k) * brace(1))


def pairing(kind: str, a: int, b: int) -> RationalPoly:
    """Closed-form pairings: ``VV`` = <V_a,V_b>, ``VS`` = <V_a,S_b>, ``PppS`` = <P''_a,S_b>, ``PpS`` = <P'_a,S_b>."""
    if kind == "VV":
        if a < 1 or b < 1:
            raise ValueError("V_n needs n >= 1")
        return RationalPoly(bracket(a * b))
    if kind == "VS":
        if a < 1 or b < 0:
            raise ValueError("VS pairing needs a >= 1, b >= 0")
        return RationalPoly(cnk(a, b).exact_div(brace(1)))
    if kind == "PppS":
        return RationalPoly(ONE if a == b else ZERO)
    if kind == "PpS":
        return RationalPoly(pprime_factor(a) if a == b else ZERO)
    raise ValueError(f"unknown pairing kind {kind!r}")


def r_coeff(n: int, k: int) -> RationalPoly:
    """``R(n,k) = (-1)^{n+1-k} {1}{2k} / ({n+1-k}! {n+1+k}!)``, zero outside ``1 <= k <= n+1``."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 1 <= k <= n + 1:
        return RationalPoly(ZERO)
    sign = -1 if (n + 1 - k) % 2 else 1
    num = brace(1) * brace(2 * k) * sign
    den = factorial("brace", n + 1 - k) * factorial("brace", n + 1 + k)
    return RationalPoly(num, den)


@dataclass(frozen=True)
class LinkPairingTable:
    """Values ``J(P''_{k_1..k_r}, P'_{l_1..l_s})`` keyed by the tuple ``(k..., l...)``."""

    dims: tuple[int, int]
    entries: Mapping[tuple[int, ...], RationalPoly]
    name: str = ""

    def __post_init__(self):
        r, s = self.dims
        ent = {}
        for key, v in dict(self.entries).items():
            key = tuple(int(x) for x in key)
            if len(key) != r + s:
                raise CyclotomicError(f"table key {key} does not match dims {self.dims}")
            ent[key] = RationalPoly.coerce(v)
        object.__setattr__(self, "dims", (int(r), int(s)))
        object.__setattr__(self, "entries", ent)

    def get(self, ks: Sequence[int], ls: Sequence[int]) -> RationalPoly:
        key = tuple(ks) + tuple(ls)
        try:
            return self.entries[key]
        except KeyError:
            raise TableCoverageError(f"{self.name or 'table'}: no entry for indices {key}") from None

    def bounds(self) -> tuple[int, ...]:
        """Largest index present along each axis."""
        r, s = self.dims
        if not self.entries:
            return (0,) * (r + s)
        return tuple(max(key[i] for key in self.entries) for i in range(r + s))

    @classmethod
    def knot(cls, C: CyclotomicCoeffs, role: str = "surgery") -> "LinkPairingTable":
        """Single-component table: ``role='colored'`` stores ``C(k)``, ``'surgery'`` stores ``C(l) P'``-paired."""
        if role == "colored":
            return cls((1, 0), {(k,): RationalPoly(c) for k, c in enumerate(C.coeffs)}, C.knot_name)
        if role == "surgery":
            return cls((0, 1), {(l,): RationalPoly(c * pprime_factor(l)) for l, c in enumerate(C.coeffs)}, C.knot_name)
        raise ValueError("role must be 'colored' or 'surgery'")

    def split_union(self, other: "LinkPairingTable") -> "LinkPairingTable":
        """Table of a split union: entries multiply, colored indices first."""
        r1, s1 = self.dims
        r2, s2 = other.dims
        out = {}
        for ka, va in self.entries.items():
            for kb, vb in other.entries.items():
                key = ka[:r1] + kb[:r2] + ka[r1:] + kb[r2:]
                out[key] = va * vb
        name = "+".join(x for x in (self.name, other.name) if x)
        return LinkPairingTable((r1 + r2, s1 + s2), out, name)

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "entries": [list(key) + [v.to_json()] for key, v in sorted(self.entries.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping, name: str = "") -> "LinkPairingTable":
        r, s = (int(x) for x in data["dims"])
        entries = {}
        for row in data["entries"]:
            *key, val = row
            entries[tuple(int(x) for x in key)] = RationalPoly.from_json(val)
        return cls((r, s), entries, name)


def ctilde(C):
    """Convert ``P''`` indices to ``P'`` indices by the factors ``{2k+1}!/({k}!{1})``.

    A :class:`CyclotomicCoeffs` gives the tuple ``C~(k)``; a table of dims
    ``(r, s)`` gives a table of dims ``(0, r+s)`` whose entries are all
    ``P'``-paired.
    """
    if isinstance(C, CyclotomicCoeffs):
        return tuple(c * pprime_factor(k) for k, c in enumerate(C.coeffs))
    if isinstance(C, LinkPairingTable):
        r, s = C.dims
        out = {}
        for key, v in C.entries.items():
            factor = ONE
            for k in key[:r]:
                factor = factor * pprime_factor(k)
            out[key] = v * factor
        return LinkPairingTable((0, r + s), out, C.name)
    raise TypeError("ctilde expects CyclotomicCoeffs or LinkPairingTable")


@dataclass(frozen=True)
class IntegralityReport:
    entries: tuple[tuple[tuple[int, ...], bool, LaurentPoly | None], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.entries)

    def failures(self) -> list[tuple[int, ...]]:
        return [key for key, ok, _ in self.entries if not ok]


def integrality_check(Ct) -> IntegralityReport:
    """Test that each entry ``C~(k_1..)`` is divisible by ``{2m+1}!/({m}!{1})`` in ``Z[q^(+-1/2)]``, ``m = max k_i``."""
    if isinstance(Ct, LinkPairingTable):
        items: Iterable = Ct.entries.items()
    else:
        items = (((k,), v) for k, v in enumerate(Ct))
    rows = []
    for key, v in items:
        v = RationalPoly.coerce(v)
        m = max(key) if key else 0
        try:
            quotient = v.to_laurent().exact_div(pprime_factor(m))
        except InexactDivisionError:
            rows.append((tuple(key), False, None))
            continue
        ok = quotient.is_zero() or quotient.exponent_classes(2) == {0}
        rows.append((tuple(key), ok, quotient if ok else None))
    return IntegralityReport(tuple(rows))


def parity_class(n: int, r: int = 1) -> int:
    """Predicted exponent class mod 4 (quarter units) of ``J_L(n_1..n_r)``, for ``n`` the color sum."""
    return 0 if (n - r) % 2 == 0 else 2
