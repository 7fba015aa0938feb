"""Exact arithmetic in cyclotomic fields ``Q(xi_m)`` and evaluation at roots of unity.

An element is stored as its coordinate vector in ``Q[x]/(Phi_m(x))`` with
``x`` the class of a primitive ``m``-th root of unity.  The evaluation map
``ev_root`` sends ``q^{1/4}`` to ``x``; so ``q`` is sent to ``x^4``, whose
multiplicative order is ``m / gcd(m, 4)``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .qpoly import LaurentPoly

__all__ = ["RootSpec", "CycNumber", "cyclotomic_poly", "ev_root", "cyc_div", "q_order"]

_PHI_LOCK = threading.Lock()
_PHI: dict[int, tuple[int, ...]] = {}


def _int_div(num: list[int], den: Sequence[int]) -> list[int]:
    """Exact division of integer polynomials (ascending coefficient lists, monic den)."""
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dn]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("inexact cyclotomic division")
    return out


def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of ``Phi_m`` in ascending degree (memoized)."""
    if m < 1:
        raise ValueError("cyclotomic order must be positive")
    with _PHI_LOCK:
        hit = _PHI.get(m)
    if hit is not None:
        return hit
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _int_div(poly, cyclotomic_poly(d))
    result = tuple(poly)
    with _PHI_LOCK:
        _PHI[m] = result
    return result


@dataclass(frozen=True)
class RootSpec:
    """Order ``m`` of the root of unity assigned to ``q^{1/4}``."""

    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("root order must be >= 1")

    @property
    def q_order(self) -> int:
        return q_order(self.m)

    @classmethod
    def from_d(cls, d: int) -> "RootSpec":
        """Root of order ``4d`` (so ``q`` has order ``d``)."""
        return cls(4 * d)


def q_order(m: int) -> int:
    return m // gcd(m, 4)


def _reduce(coeffs: list, m: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_poly(m)
    n = len(phi) - 1
    c = [Fraction(x) for x in coeffs]
    for i in range(len(c) - 1, n - 1, -1):
        t = c[i]
        if t:
            for j in range(n + 1):
                c[i - n + j] -= t * phi[j]
    c = c[:n] + [Fraction(0)] * max(0, n - len(c))
    return tuple(c)


class CycNumber:
    """Element of ``Q(xi_m)`` in the power basis ``1, x, ..., x^{phi(m)-1}``."""

    __slots__ = ("m", "coords")

    def __init__(self, m: int, coords: Sequence = ()):
        self.m = m
        self.coords = _reduce(list(coords), m)

    @classmethod
    def _raw(cls, m: int, coords: tuple[Fraction, ...]) -> "CycNumber":
        z = object.__new__(cls)
        z.m = m
        z.coords = coords
        return z

    @classmethod
    def zero(cls, m: int) -> "CycNumber":
        return cls(m, [0])

    @classmethod
    def one(cls, m: int) -> "CycNumber":
        return cls(m, [1])

    @classmethod
    def x_power(cls, m: int, e: int) -> "CycNumber":
        e %= m
        return cls(m, [0] * e + [1])

    def _check(self, other: "CycNumber") -> None:
        if other.m != self.m:
            raise ValueError(f"mixing roots of order {self.m} and {other.m}")

    def _lift(self, other):
        if isinstance(other, CycNumber):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return CycNumber(self.m, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return CycNumber._raw(self.m, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return CycNumber._raw(self.m, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return CycNumber._raw(self.m, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNumber._raw(self.m, tuple(a * other for a in self.coords))
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = len(self.coords)
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        prod[i + j] += a * b
        return CycNumber(self.m, prod)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CycNumber":
        if k < 0:
            return cyc_div(CycNumber.one(self.m), self) ** (-k)
        out = CycNumber.one(self.m)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __truediv__(self, other) -> "CycNumber":
        other = self._lift(other)
        return cyc_div(self, other)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_integral(self) -> bool:
        """Membership in ``Z[xi_m]``."""
        return all(c.denominator == 1 for c in self.coords)

    def conjugate_inverse(self) -> "CycNumber":
        """Image under the Galois automorphism ``x -> x^{-1}``."""
        out = [0] * self.m
        for i, c in enumerate(self.coords):
            out[(-i) % self.m] += c
        return CycNumber(self.m, out)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycNumber(self.m, [other])
        if not isinstance(other, CycNumber):
            return NotImplemented
        return self.m == other.m and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.m, self.coords))

    def to_complex(self) -> complex:
        """Floating point value for debug printing only."""
        import cmath

        z = cmath.exp(2j * cmath.pi / self.m)
        return sum(complex(c) * z**i for i, c in enumerate(self.coords))

    def to_json(self) -> dict:
        return {"m": self.m, "coords": [f"{c.numerator}/{c.denominator}" for c in self.coords]}

    @classmethod
    def from_json(cls, data: dict) -> "CycNumber":
        return cls(int(data["m"]), [Fraction(c) for c in data["coords"]])

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return f"CycNumber(m={self.m}, {' + '.join(terms) or '0'})"


def ev_root(p: LaurentPoly, r: RootSpec | int) -> CycNumber:
    """Evaluate at ``q^{1/4} = xi_m``."""
    m = r.m if isinstance(r, RootSpec) else int(r)
    folded = [0] * m
    for e, c in p.as_dict().items():
        folded[e % m] += c
    return CycNumber(m, folded)


def _poly_trim(a: list[Fraction]) -> list[Fraction]:
    while a and not a[-1]:
        a.pop()
    return a


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _poly_trim(a)
    qt = [Fraction(0)] * (len(a) - db)
    lead = b[-1]
    for i in range(len(a) - 1 - db, -1, -1):
        c = a[i + db] / lead
        qt[i] = c
        if c:
            for j, x in enumerate(b):
                a[i + j] -= c * x
    return _poly_trim(qt), _poly_trim(a[:db])


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def cyc_div(a: CycNumber, b: CycNumber) -> CycNumber:
    """Exact quotient ``a / b`` in ``Q(xi_m)`` via extended Euclid against ``Phi_m``."""
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("division by zero in cyclotomic field")
    m = a.m
    r0 = [Fraction(c) for c in cyclotomic_poly(m)]
    r1 = _poly_trim(list(b.coords))
    s0: list[Fraction] = []
    s1: list[Fraction] = [Fraction(1)]
    # invariant: s_i * b == r_i  (mod Phi_m)
    while len(r1) > 1:
        qt, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(qt, s1))
    inv = [c / r1[0] for c in s1]
    return a * CycNumber(m, inv)
