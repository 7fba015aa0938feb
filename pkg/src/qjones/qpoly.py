"""Exact Laurent polynomials in ``q^{1/4}`` and the quantum integers built on them.

Exponents are stored as integers in quarter units, so ``q`` is the monomial
with exponent 4, ``q^{1/2}`` has exponent 2 and the Kauffman variable ``A``
(identified with ``q^{1/4}``) has exponent 1.  One type therefore covers
``Z[q^{±1/4}]``, ``Z[q^{±1/2}]`` and ``Z[q^{±1}]``; the residues of the
exponents mod 4 tell which subring a value lives in.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_gcd

__all__ = [
    "InexactDivisionError",
    "LaurentPoly",
    "RationalPoly",
    "ZERO",
    "ONE",
    "qpow",
    "brace",
    "bracket",
    "factorial",
    "cnk",
    "brace_falling",
    "qbinom",
    "unbalanced",
    "qpochhammer",
]


class InexactDivisionError(ArithmeticError):
    """Raised when an exact division of Laurent polynomials leaves a remainder."""


Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    """Immutable sparse Laurent polynomial with integer coefficients.

    ``terms`` maps quarter-unit exponents to nonzero integers.
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] | None = None):
        t: dict[int, int] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for e, c in items:
                if c:
                    e = int(e)
                    v = t.get(e, 0) + int(c)
                    if v:
                        t[e] = v
                    else:
                        del t[e]
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, t: dict[int, int]) -> "LaurentPoly":
        # caller guarantees no zero coefficients
        p = object.__new__(cls)
        p._t = t
        p._hash = None
        return p

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls._raw({int(e): int(c)}) if c else cls._raw({})

    @classmethod
    def coerce(cls, x: Scalar) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls.monomial(0, x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # ------------------------------------------------------------------ access
    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        """Terms sorted by ascending exponent."""
        return tuple(sorted(self._t.items()))

    def as_dict(self) -> dict[int, int]:
        return dict(self._t)

    def coeff(self, e: int) -> int:
        return self._t.get(e, 0)

    def is_zero(self) -> bool:
        return not self._t

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def degree(self) -> int:
        if not self._t:
            raise ValueError("degree of the zero polynomial")
        return max(self._t)

    def valuation(self) -> int:
        if not self._t:
            raise ValueError("valuation of the zero polynomial")
        return min(self._t)

    def leading(self) -> tuple[int, int]:
        e = self.degree()
        return e, self._t[e]

    def exponent_classes(self, modulus: int = 4) -> set[int]:
        return {e % modulus for e in self._t}

    def content(self) -> int:
        from math import gcd

        g = 0
        for c in self._t.values():
            g = gcd(g, c)
        return g

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    # -------------------------------------------------------------- arithmetic
    def __add__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.monomial(0, other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        if len(self._t) < len(other._t):
            a, b = other._t, self._t
        else:
            a, b = self._t, other._t
        t = dict(a)
        for e, c in b.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return LaurentPoly._raw(t)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.monomial(0, other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({e: c * other for e, c in self._t.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((eb, cb),) = b.items()
            return LaurentPoly._raw({e + eb: c * cb for e, c in a.items()})
        t: dict[int, int] = {}
        get = t.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                k = e1 + e2
                t[k] = get(k, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if self.is_monomial():
                ((e, c),) = self._t.items()
                if abs(c) == 1:
                    return LaurentPoly.monomial(e * n, c ** (-n))
            raise ValueError("negative power of a non-unit")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, e: int) -> "LaurentPoly":
        """Multiply by the monomial with quarter exponent ``e``."""
        if not e:
            return self
        return LaurentPoly._raw({k + e: c for k, c in self._t.items()})

    def exact_div(self, other: Scalar) -> "LaurentPoly":
        """Quotient ``self / other``; raises :class:`InexactDivisionError` if inexact."""
        if isinstance(other, int):
            other = LaurentPoly.monomial(0, other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return ZERO
        b = other._t
        if len(b) == 1:
            ((eb, cb),) = b.items()
            t = {}
            for e, c in self._t.items():
                qv, r = divmod(c, cb)
                if r:
                    raise InexactDivisionError(f"{self} is not divisible by {other}")
                t[e - eb] = qv
            return LaurentPoly._raw(t)
        bdeg = max(b)
        bval = min(b)
        blead = b[bdeg]
        lo = min(self._t) - bval
        rem = dict(self._t)
        quot: dict[int, int] = {}
        while rem:
            e = max(rem)
            qe = e - bdeg
            if qe < lo:
                raise InexactDivisionError(f"{self} is not divisible by {other}")
            qc, r = divmod(rem[e], blead)
            if r:
                raise InexactDivisionError(f"{self} is not divisible by {other}")
            quot[qe] = qc
            for eb, cb in b.items():
                k = eb + qe
                v = rem.get(k, 0) - qc * cb
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPoly._raw(quot)

    def divides(self, other: "LaurentPoly") -> bool:
        try:
            other.exact_div(self)
        except InexactDivisionError:
            return False
        return True

    def __truediv__(self, other: Scalar) -> "RationalPoly":
        return RationalPoly(self, LaurentPoly.coerce(other))

    def __rtruediv__(self, other: Scalar) -> "RationalPoly":
        return RationalPoly(LaurentPoly.coerce(other), self)

    # ------------------------------------------------------------ comparisons
    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self._t == ({0: other} if other else {})
        if isinstance(other, LaurentPoly):
            return self._t == other._t
        if isinstance(other, RationalPoly):
            return other == self
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # ----------------------------------------------------------- transforms
    def map_exponents(self, fn) -> "LaurentPoly":
        return LaurentPoly((fn(e), c) for e, c in self._t.items())

    def invert_q(self) -> "LaurentPoly":
        """Image under ``q -> q^{-1}``."""
        return LaurentPoly._raw({-e: c for e, c in self._t.items()})

    def eval_at(self, value):
        """Substitute a number for ``q^{1/4}`` (any ring supporting ``**``)."""
        total = 0
        for e, c in self._t.items():
            total = total + c * value**e
        return total

    def at_one(self) -> int:
        return sum(self._t.values())

    def fold(self, period: int) -> "LaurentPoly":
        """Reduce exponents mod ``period`` (i.e. modulo ``x^period - 1``)."""
        return LaurentPoly((e % period, c) for e, c in self._t.items())

    # ---------------------------------------------------------- serialization
    def to_json(self) -> list[list]:
        return [[e, str(c)] for e, c in self.terms]

    @classmethod
    def from_json(cls, data: Iterable) -> "LaurentPoly":
        out: dict[int, int] = {}
        last = None
        for e, c in data:
            e = int(e)
            c = int(c)
            if c == 0:
                raise ValueError("zero coefficient in serialized polynomial")
            if last is not None and e <= last:
                raise ValueError("exponents must be strictly ascending")
            last = e
            out[e] = c
        return cls._raw(out)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.pretty()})"

    def pretty(self, var: str = "q", unit: int = 4) -> str:
        """Human-readable form; ``unit`` stored exponents make one power of ``var``
        (4 for ``q``, 1 for ``A = q^{1/4}``)."""
        if not self._t:
            return "0"
        parts = []
        for e, c in sorted(self._t.items(), reverse=True):
            x = Fraction(e, unit)
            if e == 0:
                mono = ""
            elif x == 1:
                mono = var
            elif x.denominator == 1:
                mono = f"{var}^{x.numerator}"
            else:
                mono = f"{var}^({x.numerator}/{x.denominator})"
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


ZERO = LaurentPoly()
ONE = LaurentPoly.monomial(0)


def qpow(x: Fraction | int, c: int = 1) -> LaurentPoly:
    """The monomial ``c q^x``; ``x`` must be a multiple of 1/4."""
    e = Fraction(x) * 4
    if e.denominator != 1:
        raise ValueError(f"q^{x} is not a quarter power")
    return LaurentPoly.monomial(int(e), c)


# ---------------------------------------------------------------------------
# rational functions


def _dense(p: LaurentPoly, shift: int) -> list[int]:
    deg = p.degree()
    out = [0] * (deg - shift + 1)
    for e, c in p._t.items():
        out[deg - e] = c
    return out


def _poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Gcd of the polynomial parts (monomial factors ignored), positive lead."""
    va, vb = a.valuation(), b.valuation()
    da = _dense(a, va)
    db = _dense(b, vb)
    g = dup_gcd([ZZ(x) for x in da], [ZZ(x) for x in db], ZZ)
    n = len(g) - 1
    return LaurentPoly((n - i, int(c)) for i, c in enumerate(g))


class RationalPoly:
    """Quotient of two Laurent polynomials, kept in lowest terms.

    The denominator is a polynomial with nonzero constant term and a positive
    leading coefficient; common factors (including integer content) are removed.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Scalar, den: Scalar = 1, *, reduce: bool = True):
        num = LaurentPoly.coerce(num)
        den = LaurentPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            num, den = self._normalize(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def _normalize(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
        v = den.valuation()
        den = den.shift(-v)
        num = num.shift(-v)
        if num.is_zero():
            return ZERO, ONE
        if not den.is_monomial():
            g = _poly_gcd(num, den)
            if not (g.is_monomial() and abs(g.coeff(g.degree())) == 1):
                num = num.exact_div(g)
                den = den.exact_div(g)
        else:
            from math import gcd

            g = gcd(num.content(), den.coeff(0))
            if g > 1:
                num = num.exact_div(g)
                den = den.exact_div(g)
        if den.leading()[1] < 0:
            num, den = -num, -den
        return num, den

    @classmethod
    def coerce(cls, x) -> "RationalPoly":
        if isinstance(x, RationalPoly):
            return x
        return cls(LaurentPoly.coerce(x), ONE, reduce=False)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.is_monomial() and abs(self.den.coeff(self.den.degree())) == 1

    def to_laurent(self) -> LaurentPoly:
        """Return the value as a Laurent polynomial or raise InexactDivisionError."""
        return self.num.exact_div(self.den)

    def __add__(self, other) -> "RationalPoly":
        other = RationalPoly.coerce(other)
        if self.den == other.den:
            return RationalPoly(self.num + other.num, self.den)
        return RationalPoly(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(-self.num, self.den, reduce=False)

    def __sub__(self, other) -> "RationalPoly":
        return self + (-RationalPoly.coerce(other))

    def __rsub__(self, other) -> "RationalPoly":
        return RationalPoly.coerce(other) - self

    def __mul__(self, other) -> "RationalPoly":
        other = RationalPoly.coerce(other)
        return RationalPoly(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalPoly":
        other = RationalPoly.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalPoly(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalPoly":
        return RationalPoly.coerce(other) / self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, LaurentPoly)):
            other = RationalPoly.coerce(other)
        if not isinstance(other, RationalPoly):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RationalPoly":
        if isinstance(data, dict):
            return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data.get("den", [[0, "1"]])))
        return cls(LaurentPoly.from_json(data))

    def __repr__(self) -> str:
        if self.den == ONE:
            return f"RationalPoly({self.num.pretty()})"
        return f"RationalPoly(({self.num.pretty()}) / ({self.den.pretty()}))"


# ---------------------------------------------------------------------------
# quantum integers


@lru_cache(maxsize=None)
def brace(n: int) -> LaurentPoly:
    """``{n} = q^{n/2} - q^{-n/2}``."""
    if n == 0:
        return ZERO
    return LaurentPoly._raw({2 * n: 1, -2 * n: -1})


@lru_cache(maxsize=None)
def bracket(n: int) -> LaurentPoly:
    """Quantum integer ``[n] = {n}/{1}``, for ``n >= 1``."""
    if n < 1:
        raise ValueError("bracket(n) needs n >= 1")
    return LaurentPoly._raw({2 * (n - 1 - 2 * i): 1 for i in range(n)})


@lru_cache(maxsize=None)
def unbalanced(n: int) -> LaurentPoly:
    """``{n}_- = 1 - q^n``."""
    if n == 0:
        return ZERO
    return LaurentPoly._raw({0: 1, 4 * n: -1})


@lru_cache(maxsize=None)
def factorial(kind: str, n: int) -> LaurentPoly:
    """``{n}!``, ``[n]!`` or ``{n}_-!`` selected by ``kind``."""
    if n < 0:
        raise ValueError("factorial of a negative integer")
    factors = {"brace": brace, "bracket": bracket, "unbalanced": unbalanced}
    if kind not in factors:
        raise ValueError(f"unknown factorial kind {kind!r}")
    factor = factors[kind]
    if n == 0:
        return ONE
    return factorial(kind, n - 1) * factor(n)


def qpochhammer(n: int) -> LaurentPoly:
    """``(q;q)_n = (1-q)(1-q^2)...(1-q^n)``."""
    return factorial("unbalanced", n)


@lru_cache(maxsize=None)
def cnk(n: int, k: int) -> LaurentPoly:
    """``C(n,k) = prod_{j=n-k}^{n+k} {j}``; zero as soon as ``k >= n``."""
    if n < 1 or k < 0:
        raise ValueError("cnk needs n >= 1 and k >= 0")
    if k >= n:
        return ZERO
    if k == 0:
        return brace(n)
    return cnk(n, k - 1) * brace(n - k) * brace(n + k)


@lru_cache(maxsize=None)
def brace_falling(n: int, k: int) -> LaurentPoly:
    """``{n}_k = prod_{i=1}^k {n-i+1}``, and 0 for ``k < 0``."""
    if k < 0:
        return ZERO
    if k == 0:
        return ONE
    return brace_falling(n, k - 1) * brace(n - k + 1)


@lru_cache(maxsize=None)
def qbinom(n: int, k: int) -> LaurentPoly:
    """Balanced q-binomial ``{n}_k / {k}_k``, 0 for ``k < 0``."""
    if k < 0:
        return ZERO
    return brace_falling(n, k).exact_div(brace_falling(k, k))
