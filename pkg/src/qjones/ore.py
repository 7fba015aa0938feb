"""The quantum plane ``L M = q^{1/2} M L``, recurrence guessing and the AJ comparison.

Operators act on sequences by ``(M f)(n) = q^{n/2} f(n)`` and
``(L f)(n) = f(n+1)``.  An :class:`OrePoly` is ``sum_k a_k(M) L^k`` with
``a_k`` in the rational function field ``Q(t, M)``, ``t = q^{1/4}``; the
twist is ``L^k b(M) = b(q^{k/2} M) L^k``.
"""

from __future__ import annotations

import itertools
import logging
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Callable, Iterable, Mapping, Sequence as Seq

import numpy as np
from sympy import QQ, prevprime
from sympy.polys.fields import field

from .cyclo import RootSpec
from .habiro import HabiroElement, h_add, h_eval, h_taylor
from .qpoly import (
    ONE,
    ZERO,
    InexactDivisionError,
    LaurentPoly,
    RationalPoly,
    brace,
    bracket,
    factorial,
    qbinom,
)

__all__ = [
    "OreError",
    "InsufficientDataError",
    "DenominatorVanishesError",
    "FIELD",
    "T",
    "M",
    "OrePoly",
    "Sequence",
    "LambdaSum",
    "APoly",
    "AJVerdict",
    "ore_mul",
    "ore_apply",
    "left_divmod",
    "gcrd",
    "guess_recurrence",
    "guess_search",
    "recurrence_polynomial",
    "verify_recurrence",
    "specialize_q1",
    "aj_compare",
    "builtin_seq",
    "bareiss_kernel",
]

log = logging.getLogger(__name__)

FIELD, T, M = field("t,M", QQ)
_RING = FIELD.ring


class OreError(ValueError):
    pass


class InsufficientDataError(OreError):
    pass


class DenominatorVanishesError(OreError):
    pass


# ---------------------------------------------------------------------------
# coefficient helpers (t = q^{1/4})


def _t_power(e: int):
    return T**e if e >= 0 else 1 / T ** (-e)


def _poly_from_terms(terms: Mapping[tuple[int, int], object]):
    """Field element from ``{(t_exp, m_exp): c}`` with possibly negative exponents."""
    terms = {k: v for k, v in terms.items() if v}
    if not terms:
        return FIELD(0)
    st = min(k[0] for k in terms)
    sm = min(k[1] for k in terms)
    poly = _RING.from_dict({(a - st, b - sm): QQ(v) for (a, b), v in terms.items()})
    out = FIELD(poly) * _t_power(st)
    return out * M**sm if sm >= 0 else out / M ** (-sm)


def _twist_poly(p, k: int) -> tuple[object, int]:
    terms = {(a + 2 * k * b, b): c for (a, b), c in p.terms()}
    shift = min(a for a, _ in terms) if terms else 0
    return _RING.from_dict({(a - shift, b): c for (a, b), c in terms.items()}), shift


def _twist(a, k: int):
    """``a(t, M) -> a(t, q^{k/2} M)``."""
    if k == 0 or not a:
        return a
    num, sn = _twist_poly(a.numer, k)
    den, sd = _twist_poly(a.denom, k)
    return FIELD(num) / FIELD(den) * _t_power(sn - sd)


def _poly_at(p, n: int) -> tuple[LaurentPoly, int]:
    """Integer Laurent polynomial ``D * p(t, t^{2n})`` and the scale ``D``."""
    acc: dict[int, Fraction] = {}
    for (a, b), c in p.terms():
        e = a + 2 * n * b
        acc[e] = acc.get(e, Fraction(0)) + Fraction(int(c.numerator), int(c.denominator))
    scale = lcm(*(v.denominator for v in acc.values())) if acc else 1
    return LaurentPoly({e: int(v * scale) for e, v in acc.items()}), scale


def _coeff_at(a, n: int) -> RationalPoly:
    """Value of a coefficient at ``M = q^{n/2}``."""
    num, sn = _poly_at(a.numer, n)
    den, sd = _poly_at(a.denom, n)
    if den.is_zero():
        raise DenominatorVanishesError(f"coefficient denominator vanishes at M = q^({n}/2)")
    return RationalPoly(num * sd, den * sn)


def _laurent_to_field(p: LaurentPoly, m_exp: int = 0):
    return _poly_from_terms({(e, m_exp): c for e, c in p.as_dict().items()})


# ---------------------------------------------------------------------------
# operators


class OrePoly:
    """``sum_k a_k L^k``; ``terms`` maps ``k >= 0`` to nonzero field elements."""

    __slots__ = ("terms", "meta")

    def __init__(self, terms: Mapping[int, object] | None = None, meta: dict | None = None):
        out = {}
        for k, v in (terms or {}).items():
            if k < 0:
                raise OreError("negative L-powers are not allowed")
            v = FIELD(v) if not hasattr(v, "numer") else v
            if v:
                out[int(k)] = v
        self.terms = out
        self.meta = dict(meta or {})

    # --------------------------------------------------------- builders
    @classmethod
    def L(cls, k: int = 1) -> "OrePoly":
        return cls({k: FIELD(1)})

    @classmethod
    def scalar(cls, a) -> "OrePoly":
        return cls({0: a})

    @classmethod
    def from_laurent_coeffs(cls, coeffs: Mapping[tuple[int, int], LaurentPoly]) -> "OrePoly":
        """``{(k, j): c(t)}`` meaning ``c(t) M^j L^k``."""
        per_k: dict[int, dict] = {}
        for (k, j), c in coeffs.items():
            d = per_k.setdefault(k, {})
            for e, v in c.as_dict().items():
                d[(e, j)] = d.get((e, j), 0) + v
        return cls({k: _poly_from_terms(d) for k, d in per_k.items()})

    # ------------------------------------------------------------ basics
    def degree(self) -> int:
        return max(self.terms) if self.terms else -1

    def lc(self):
        return self.terms[self.degree()]

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, k: int):
        return self.terms.get(k, FIELD(0))

    def __add__(self, other: "OrePoly") -> "OrePoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, FIELD(0)) + v
        return OrePoly(out)

    def __neg__(self) -> "OrePoly":
        return OrePoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "OrePoly") -> "OrePoly":
        return self + (-other)

    def __mul__(self, other) -> "OrePoly":
        if isinstance(other, OrePoly):
            return ore_mul(self, other)
        return ore_mul(self, OrePoly.scalar(other))

    def __rmul__(self, other) -> "OrePoly":
        return ore_mul(OrePoly.scalar(other), self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrePoly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self) -> int:
        return hash(tuple(sorted((k, str(v)) for k, v in self.terms.items())))

    def __repr__(self) -> str:
        return f"OrePoly({self.pretty()})"

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = _coeff_pretty(self.terms[k])
            parts.append(f"({c})" + ("" if k == 0 else "*L" if k == 1 else f"*L^{k}"))
        return " + ".join(parts)

    # ------------------------------------------------------- integrality
    def integer_terms(self) -> dict[int, dict[tuple[int, int], int]]:
        """``{k: {(t_exp, m_exp): int}}``; requires polynomial coefficients with integer entries."""
        out = {}
        for k, v in self.terms.items():
            if v.denom != _RING.one:
                raise OreError("operator has non-polynomial coefficients; normalize first")
            d = {}
            for mono, c in v.numer.terms():
                if c.denominator != 1:
                    raise OreError("operator has non-integer coefficients; normalize first")
                d[mono] = int(c.numerator)
            out[k] = d
        return out

    def is_half_integral(self) -> bool:
        """All powers of ``t = q^{1/4}`` even, i.e. coefficients in ``Z[q^(+-1/2)][M]``."""
        return all(a % 2 == 0 for d in self.integer_terms().values() for (a, _) in d)

    # ------------------------------------------------------ serialization
    def to_json(self) -> dict:
        terms = []
        for k in sorted(self.terms):
            v = self.terms[k]
            entry = {"l": k, "coeff": {"num": _poly_json(v.numer), "den": _poly_json(v.denom)}}
            terms.append(entry)
        return {"terms": terms}

    @classmethod
    def from_json(cls, data: Mapping) -> "OrePoly":
        out = {}
        for entry in data["terms"]:
            c = entry["coeff"]
            num = _poly_from_json(c["num"])
            den = _poly_from_json(c.get("den", [[0, 0, 1]]))
            out[int(entry["l"])] = out.get(int(entry["l"]), FIELD(0)) + num / den
        return cls(out)


def _poly_pretty(p) -> str:
    by_m: dict[int, dict[int, int]] = {}
    frac = False
    for (a, b), c in p.terms():
        if c.denominator != 1:
            frac = True
        by_m.setdefault(b, {})[a] = c
    if frac:
        return str(p).replace("t", "q^(1/4)")
    parts = []
    for b in sorted(by_m, reverse=True):
        lp = LaurentPoly({a: int(c) for a, c in by_m[b].items()})
        mono = "" if b == 0 else "M" if b == 1 else f"M^{b}"
        if not mono:
            parts.append(lp.pretty())
        elif lp == ONE:
            parts.append(mono)
        elif lp == -ONE:
            parts.append(f"-{mono}")
        else:
            parts.append(f"({lp.pretty()})*{mono}")
    return " + ".join(parts) or "0"


def _coeff_pretty(v) -> str:
    num = _poly_pretty(v.numer)
    if v.denom == _RING.one:
        return num
    return f"({num})/({_poly_pretty(v.denom)})"


def _poly_json(p) -> list[list]:
    rows = []
    for (a, b), c in sorted(p.terms()):
        if a % 2:
            raise OreError("operator involves odd powers of q^(1/4); the file format stores powers of q^(1/2)")
        if c.denominator != 1:
            raise OreError("operator file stores integer coefficients; normalize first")
        rows.append([a // 2, b, int(c.numerator)])
    return rows


def _poly_from_json(rows) -> object:
    return _poly_from_terms({(2 * int(a), int(b)): int(c) for a, b, c in rows})


def ore_mul(P: OrePoly, Q: OrePoly) -> OrePoly:
    """``a L^k * b L^l = a(M) b(q^{k/2} M) L^{k+l}``."""
    out: dict[int, object] = {}
    for k, a in P.terms.items():
        for l, b in Q.terms.items():
            out[k + l] = out.get(k + l, FIELD(0)) + a * _twist(b, k)
    return OrePoly(out)


def left_divmod(P: OrePoly, Q: OrePoly) -> tuple[OrePoly, OrePoly]:
    """``P = quotient * Q + remainder`` with ``deg remainder < deg Q``."""
    if Q.is_zero():
        raise ZeroDivisionError("division by the zero operator")
    d = Q.degree()
    b = Q.lc()
    quotient: dict[int, object] = {}
    R = P
    while not R.is_zero() and R.degree() >= d:
        shift = R.degree() - d
        c = R.lc() / _twist(b, shift)
        quotient[shift] = quotient.get(shift, FIELD(0)) + c
        R = R - ore_mul(OrePoly({shift: c}), Q)
    return OrePoly(quotient), R


def gcrd(P: OrePoly, Q: OrePoly) -> OrePoly:
    """Generator of the left ideal ``A P + A Q`` (a greatest common right divisor)."""
    A, B = P, Q
    while not B.is_zero():
        _, r = left_divmod(A, B)
        A, B = B, r
    return A


def _normalize(P: OrePoly, units_only: bool = False) -> OrePoly:
    """Clear denominators, remove content over ``Z[t, M]``, pin the sign of the leading coefficient.

    With ``units_only`` only integer content and a common monomial ``t^a M^b`` are removed.
    """
    if P.is_zero():
        return P
    den = _RING.one
    for v in P.terms.values():
        den = den.lcm(v.denom)
    nums = {k: (v.numer * den).exquo(v.denom) for k, v in P.terms.items()}
    if units_only:
        monos = [m for p in nums.values() for m, _ in p.terms()]
        g = _RING.from_dict({(min(a for a, _ in monos), min(b for _, b in monos)): QQ(1)})
    else:
        g = None
        for p in nums.values():
            g = p if g is None else g.gcd(p)
    nums = {k: p.exquo(g) for k, p in nums.items()}
    # integer content
    dens = [int(c.denominator) for p in nums.values() for _, c in p.terms()]
    scale = lcm(*dens)
    ints = {k: {m: int(c * scale) for m, c in p.terms()} for k, p in nums.items()}
    content = 0
    for d in ints.values():
        for c in d.values():
            content = gcd(content, c)
    lead = ints[max(ints)]
    sign = 1 if lead[max(lead, key=lambda m: (m[1], m[0]))] > 0 else -1
    out = {k: FIELD(_RING.from_dict({m: QQ(sign * c // content) for m, c in d.items()})) for k, d in ints.items()}
    return OrePoly(out, P.meta)


def recurrence_polynomial(generators: Iterable[OrePoly]) -> OrePoly:
    """Normalized generator of the left ideal spanned by ``generators``.

    The output is a right divisor of every input; it is minimal among
    operators of the ideal only as far as the inputs generate it.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise OreError("need at least one nonzero operator")
    G = gens[0]
    for P in gens[1:]:
        G = gcrd(G, P)
    out = _normalize(G)
    out.meta.update(gens[0].meta)
    if not out.is_half_integral():
        warnings.warn("recurrence polynomial involves odd powers of q^(1/4)", stacklevel=2)
    return out


# ---------------------------------------------------------------------------
# sequences


class LambdaSum:
    """Finite sum of Habiro elements whose prefactors lie in different quarter classes."""

    __slots__ = ("pieces",)

    def __init__(self, pieces: Iterable[HabiroElement] = ()):
        by_class: dict[int, HabiroElement] = {}
        for h in pieces:
            c = h.prefactor_e % 4
            by_class[c] = h if c not in by_class else h_add(by_class[c], h)
        self.pieces = by_class

    @property
    def trunc(self) -> int:
        return min((h.trunc for h in self.pieces.values()), default=0)

    def is_zero(self, bound: int | None = None) -> bool:
        """Bounded zero test: evaluations at orders ``4d``, ``d <= bound``, and Taylor data when possible."""
        if not self.pieces:
            return True
        bound = self.trunc if bound is None else bound
        for d in range(1, bound + 1):
            r = RootSpec.from_d(d)
            total = None
            for h in self.pieces.values():
                v = h_eval(h, r)
                total = v if total is None else total + v
            if not total.is_zero():
                return False
        if set(self.pieces) == {0}:
            return not any(h_taylor(self.pieces[0], bound))
        return True


def _habiro_scale(c: LaurentPoly, h: HabiroElement) -> list[HabiroElement]:
    out = []
    for cls in sorted(c.exponent_classes()):
        part = LaurentPoly({e: v for e, v in c.as_dict().items() if e % 4 == cls})
        out.append(HabiroElement.from_laurent(part, h.trunc) * h)
    return out


@dataclass
class Sequence:
    """``n -> value`` on ``1 <= n <= nmax`` (``nmax=None`` for unbounded generators)."""

    kind: str
    fn: Callable[[int], object]
    name: str = ""
    nmax: int | None = None

    def __post_init__(self):
        if self.kind not in ("laurent", "habiro"):
            raise OreError("sequence kind must be 'laurent' or 'habiro'")
        self._cache: dict[int, object] = {}

    def __call__(self, n: int):
        if n < 1 or (self.nmax is not None and n > self.nmax):
            raise OreError(f"sequence {self.name or '?'} is defined on 1..{self.nmax}, asked for n={n}")
        if n not in self._cache:
            self._cache[n] = self.fn(n)
        return self._cache[n]

    def values(self, lo: int, hi: int) -> list:
        return [self(n) for n in range(lo, hi + 1)]

    @classmethod
    def from_values(cls, values: Seq, name: str = "", kind: str = "laurent") -> "Sequence":
        vals = list(values)
        return cls(kind, lambda n: vals[n - 1], name, len(vals))

    def __add__(self, other: "Sequence") -> "Sequence":
        nmax = _min_opt(self.nmax, other.nmax)
        return Sequence(self.kind, lambda n: self(n) + other(n), f"({self.name}+{other.name})", nmax)

    def __mul__(self, other: "Sequence") -> "Sequence":
        nmax = _min_opt(self.nmax, other.nmax)
        return Sequence(self.kind, lambda n: self(n) * other(n), f"({self.name}*{other.name})", nmax)


def _min_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _check_range(P: OrePoly, f: Sequence, n_lo: int, n_hi: int) -> None:
    if n_lo < 1 or n_hi < n_lo:
        raise OreError(f"bad range {n_lo}..{n_hi}")
    need = n_hi + max(P.degree(), 0)
    if f.nmax is not None and need > f.nmax:
        raise OreError(f"applying an order-{P.degree()} operator up to n={n_hi} needs f({need}), have n <= {f.nmax}")


def ore_apply(P: OrePoly, f: Sequence, n_lo: int, n_hi: int) -> Sequence:
    """``(P f)(n)`` for ``n_lo <= n <= n_hi`` as an explicit sequence (indexed from ``n_lo``)."""
    _check_range(P, f, n_lo, n_hi)
    out = []
    for n in range(n_lo, n_hi + 1):
        if f.kind == "laurent":
            acc = RationalPoly(ZERO)
            for k, a in P.terms.items():
                acc = acc + _coeff_at(a, n) * f(n + k)
            out.append(acc.to_laurent() if acc.is_laurent() else acc)
        else:
            pieces = []
            for k, a in P.terms.items():
                c = _coeff_at(a, n)
                if not c.is_laurent():
                    raise OreError("habiro sequences need operators with polynomial coefficients")
                pieces.extend(_habiro_scale(c.to_laurent(), f(n + k)))
            out.append(LambdaSum(pieces))
    kind = "laurent" if f.kind == "laurent" else "habiro"
    vals = out
    return Sequence(kind, lambda n: vals[n - n_lo], f"({P.pretty()}){f.name}", len(vals) + n_lo - 1) if n_lo == 1 else _offset_seq(kind, vals, n_lo, f.name)


def _offset_seq(kind: str, vals: list, n_lo: int, name: str) -> Sequence:
    s = Sequence(kind, lambda n: vals[n - n_lo], name, n_lo + len(vals) - 1)
    s._cache.update({n_lo + i: v for i, v in enumerate(vals)})
    return s


def verify_recurrence(P: OrePoly, f: Sequence, n_lo: int, n_hi: int, bound: int | None = None) -> bool:
    """Exact check of ``(P f)(n) = 0``; for Habiro sequences the bounded zero test at ``bound`` (default: trunc)."""
    _check_range(P, f, n_lo, n_hi)
    for n in range(n_lo, n_hi + 1):
        if f.kind == "laurent":
            acc = RationalPoly(ZERO)
            for k, a in P.terms.items():
                acc = acc + _coeff_at(a, n) * f(n + k)
            if not acc.is_zero():
                return False
        else:
            v = ore_apply(P, f, n, n)(n)
            if not v.is_zero(bound):
                return False
    return True


# ---------------------------------------------------------------------------
# linear algebra


def bareiss_kernel(rows: list[list[LaurentPoly]]) -> list[list[LaurentPoly]]:
    """Kernel basis of a matrix over ``Z[t^(+-1)]`` by fraction-free Gauss-Jordan elimination.

    The reduced matrix has every pivot equal to the last pivot ``D``; the
    basis vector attached to a free column ``f`` has ``D`` there and minus
    the reduced column entries at the pivot positions.  All divisions by the
    previous pivot are exact.
    """
    A = [list(r) for r in rows]
    if not A:
        return []
    ncols = len(A[0])
    prev = ONE
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(ncols):
        cands = [i for i in range(r, len(A)) if A[i][c]]
        if not cands:
            continue
        i = min(cands, key=lambda i: len(A[i][c]))
        A[r], A[i] = A[i], A[r]
        p = A[r][c]
        for i in range(len(A)):
            if i == r:
                continue
            a = A[i][c]
            row = A[i]
            if a:
                A[i] = [(p * x - a * y).exact_div(prev) if (x or y) else ZERO for x, y in zip(row, A[r])]
            else:
                A[i] = [(p * x).exact_div(prev) if x else ZERO for x in row]
        for rr, cc in pivots:
            pass
        pivots.append((r, c))
        prev = p
        r += 1
        if r == len(A):
            break
    D = prev
    pivot_cols = {c for _, c in pivots}
    basis = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        v = [ZERO] * ncols
        v[f] = D
        for rr, cc in pivots:
            v[cc] = -A[rr][f]
        basis.append(v)
    return basis


@lru_cache(maxsize=None)
def _primes(count: int) -> tuple[int, ...]:
    """Primes just below ``2^20``; small enough for exact float64 products."""
    out = []
    p = 2**20
    for _ in range(count):
        p = prevprime(p)
        out.append(int(p))
    return tuple(out)


def _ratrec(a: int, m: int) -> Fraction | None:
    """Rational reconstruction of ``a mod m`` with numerator and denominator below ``sqrt(m/2)``."""
    a %= m
    bound = int((m // 2) ** 0.5)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        qq = r0 // r1
        r0, r1 = r1, r0 - qq * r1
        s0, s1 = s1, s0 - qq * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


class _IntegerSystem:
    """The expanded ansatz ``c_{k,j,i} t^{2i} M^j L^k`` with one equation per power of ``t``.

    The matrix is stored as coordinate triples.  ``matrix_mod`` reduces it
    modulo a prime and, when it is much taller than wide, multiplies it on
    the left by a random matrix.  That can only enlarge the kernel (with
    probability about ``ncols / p``), which exact verification catches.
    """

    def __init__(self, f: Sequence, dL: int, dM: int, D: int, ns: range):
        self.cols = [(k, j, i) for k in range(dL + 1) for j in range(-dM, dM + 1) for i in range(-D, D + 1)]
        width = 2 * D + 1
        rows, cols, vals = [], [], []
        base = 0
        for n in ns:
            xs, cs, vs = [], [], []
            for k in range(dL + 1):
                poly = f(n + k)
                if not isinstance(poly, LaurentPoly):
                    raise OreError("integer guessing needs Laurent-polynomial values")
                e = np.fromiter((x for x, _ in poly.terms), dtype=np.int64, count=len(poly))
                c = np.array([v for _, v in poly.terms], dtype=object)
                for jj, j in enumerate(range(-dM, dM + 1)):
                    for ii, i in enumerate(range(-D, D + 1)):
                        xs.append(e + (2 * j * n + 2 * i))
                        cs.append(np.full(len(e), (k * (2 * dM + 1) + jj) * width + ii, dtype=np.int64))
                        vs.append(c)
            x = np.concatenate(xs)
            keys, inv = np.unique(x, return_inverse=True)
            rows.append(inv + base)
            cols.append(np.concatenate(cs))
            vals.append(np.concatenate(vs))
            base += len(keys)
        self.nrows = base
        self.rows = np.concatenate(rows)
        self.colidx = np.concatenate(cols)
        self.vals = np.concatenate(vals)

    def matrix_mod(self, p: int, rng: np.random.Generator | None = None):
        import flint

        ncols = len(self.cols)
        dense = np.zeros((self.nrows, ncols))
        np.add.at(dense, (self.rows, self.colidx), (self.vals % p).astype(np.float64))
        dense = np.fmod(dense, p)
        if rng is not None and self.nrows > ncols + 32:
            R = rng.integers(0, p, size=(ncols + 16, self.nrows))
            hi = (R >> 10).astype(np.float64)
            lo = (R & 1023).astype(np.float64)
            dense = np.fmod(np.fmod(hi @ dense, p) * 1024 + lo @ dense, p)
        flat = dense.astype(np.int64).ravel().tolist()
        return flint.nmod_mat(dense.shape[0], ncols, flat, p)


def _integer_kernel(sys: _IntegerSystem, primes: Seq[int], rng: np.random.Generator) -> list[dict]:
    """Kernel vectors reconstructed from residues modulo several primes."""
    results = None
    modulus = 1
    residues: list[list[int]] | None = None
    for p in primes:
        X, nullity = sys.matrix_mod(p, rng).nullspace()
        if nullity == 0:
            return []
        vecs = [[int(X[r, c]) for r in range(X.nrows())] for c in range(nullity)]
        if residues is None or len(residues) != nullity:
            residues, modulus = vecs, p
        else:
            residues = [[_crt(a, modulus, b, p) for a, b in zip(va, vb)] for va, vb in zip(residues, vecs)]
            modulus *= p
        cand = []
        for vec in residues:
            rat = [_ratrec(x, modulus) for x in vec]
            if any(r is None for r in rat):
                cand = None
                break
            cand.append(rat)
        if cand is None:
            continue
        if results == cand:
            break
        results = cand
    else:
        raise OreError("rational reconstruction did not stabilize")
    out = []
    for rat in results:
        scale = lcm(*(r.denominator for r in rat))
        out.append({col: int(r * scale) for col, r in zip(sys.cols, rat) if r})
    return out


def _crt(a: int, m: int, b: int, p: int) -> int:
    t = ((b - a) * pow(m, -1, p)) % p
    return (a + m * t) % (m * p)


def _integer_nullity(f: Sequence, dL: int, dM: int, D: int, ns: range, rng: np.random.Generator) -> int:
    sys = _IntegerSystem(f, dL, dM, D, ns)
    p = _primes(1)[0]
    return len(sys.cols) - sys.matrix_mod(p, rng).rank()


def _ore_from_integer(vec: Mapping[tuple[int, int, int], int]) -> OrePoly:
    per_k: dict[int, dict] = {}
    for (k, j, i), c in vec.items():
        d = per_k.setdefault(k, {})
        d[(2 * i, j)] = d.get((2 * i, j), 0) + c
    return OrePoly({k: _poly_from_terms(d) for k, d in per_k.items()})


def guess_recurrence(
    f: Sequence,
    dL: int,
    dM: int,
    n_train: int,
    method: str = "auto",
    max_q_span: int = 64,
) -> OrePoly | None:
    """An operator ``sum c_{k,j} M^j L^k`` (``k <= dL``, ``|j| <= dM``) annihilating ``f`` on ``1..n_train``.

    ``method='field'`` treats ``c_{k,j}`` as unknowns over ``Q(q^{1/4})`` and
    needs ``n_train >= (dL+1)(2dM+1)+5``.  ``method='integer'`` expands each
    ``c_{k,j}`` as a Laurent polynomial in ``q^{1/2}`` and splits each
    equation by powers of ``q^{1/4}``, so a few values already give
    overdetermined systems; it solves modulo primes, reconstructs, and
    verifies the result exactly on the training range.  ``'auto'`` picks
    ``field`` when there is enough data.  Returns None when no operator
    exists at these degrees.
    """
    if f.kind != "laurent":
        raise OreError("guessing is only supported for Laurent-polynomial sequences; verify Habiro recurrences instead")
    if dL < 0 or dM < 0:
        raise OreError("degrees must be nonnegative")
    unknowns = (dL + 1) * (2 * dM + 1)
    need = unknowns + 5
    if method == "auto":
        method = "field" if n_train >= need else "integer"
    if f.nmax is not None and n_train + dL > f.nmax:
        raise InsufficientDataError(f"need f(n) for n <= {n_train + dL}, have n <= {f.nmax}")
    if dL == 0:
        # order-0 operators are units once coefficients are localized at M-polynomials
        log.info("no recurrence of L-order 0 is reported; use dL >= 1")
        return None
    if method == "field":
        if n_train < need:
            raise InsufficientDataError(f"field guessing at (dL={dL}, dM={dM}) needs n_train >= {need}")
        return _guess_field(f, dL, dM, n_train)
    if method == "integer":
        if 2 * dM >= n_train:
            warnings.warn(
                f"2*dM = {2 * dM} >= n_train = {n_train}: M-polynomials can vanish on the whole training range; "
                "confirm the operator on held-out terms",
                stacklevel=2,
            )
        return _guess_integer(f, dL, dM, n_train, max_q_span)
    raise OreError(f"unknown method {method!r}")


def _guess_field(f: Sequence, dL: int, dM: int, n_train: int) -> OrePoly | None:
    cols = [(k, j) for k in range(dL + 1) for j in range(-dM, dM + 1)]
    rows = []
    for n in range(1, n_train + 1):
        row = []
        for k, j in cols:
            v = f(n + k)
            if not isinstance(v, LaurentPoly):
                raise OreError("field guessing needs Laurent-polynomial values")
            row.append(v.shift(2 * j * n))
        rows.append(row)
    basis = bareiss_kernel(rows)
    if not basis:
        return None
    ops = [OrePoly.from_laurent_coeffs({c: v for c, v in zip(cols, vec) if v}) for vec in basis]
    ops = [P for P in ops if P.degree() >= 1]
    if not ops:
        return None
    P = _generator(ops, f, n_train)
    P.meta.update(method="field", dL=dL, dM=dM, n_train=n_train, nullity=len(basis))
    return P


def _guess_integer(f: Sequence, dL: int, dM: int, n_train: int, max_q_span: int, attempts: int = 3) -> OrePoly | None:
    ns = range(1, n_train + 1)
    for attempt in range(attempts):
        rng = np.random.default_rng(attempt)
        D = 2
        while True:
            nullity = _integer_nullity(f, dL, dM, D, ns, rng)
            if nullity:
                break
            if 2 * D >= max_q_span:
                return None
            D *= 2
        # the kernel is spanned by q^{1/2}-shifts of operators of span w = 2D+1-nullity
        span = 2 * D + 1 - nullity
        D_min = max(0, (span + 1) // 2)
        if D_min < D and _integer_nullity(f, dL, dM, D_min, ns, rng):
            D = D_min
        vecs = _integer_kernel(_IntegerSystem(f, dL, dM, D, ns), _primes(40), rng)
        if not vecs:
            return None
        ops = [P for P in map(_ore_from_integer, vecs) if P.degree() >= 1]
        if not ops:
            return None
        if all(verify_recurrence(P, f, 1, n_train) for P in ops):
            P = _generator(ops, f, n_train)
            P.meta.update(method="integer", dL=dL, dM=dM, n_train=n_train, q_half_window=D)
            return P
        log.info("modular kernel failed exact verification; retrying with a new projection")
    raise OreError("modular guessing kept producing operators that fail exact verification")


def _generator(ops: list[OrePoly], f: Sequence, n_train: int) -> OrePoly:
    """Left GCD of the kernel operators, or the smallest kernel operator when the GCD loses the sequence.

    The GCD is computed after localizing at M-polynomials; for sequences with
    finite support its coefficients can vanish on the support and the GCD
    no longer annihilates ``f``.  Callers drop order-0 kernel elements first:
    they are units after localization.
    """
    P = recurrence_polynomial(ops)
    if _annihilates(P, f, n_train):
        return P
    cands = sorted((_normalize(Q, units_only=True) for Q in ops), key=lambda Q: (Q.degree(), len(str(Q.terms))))
    for Q in cands:
        if _annihilates(Q, f, n_train):
            Q.meta["generator"] = "kernel element (left GCD does not annihilate the sequence)"
            return Q
    raise OreError("no normalized kernel operator annihilates the training data")


def _annihilates(P: OrePoly, f: Sequence, n_train: int) -> bool:
    try:
        return verify_recurrence(P, f, 1, n_train)
    except DenominatorVanishesError:
        return False


def guess_search(f: Sequence, dL_max: int, dM_max: int, n_train: int, method: str = "auto") -> OrePoly | None:
    """First success over the ``(dL, dM)`` lattice, increasing ``dL`` then ``dM``.

    The result is labeled minimal within the searched degrees only.  Pairs
    with ``2 dM >= n_train`` are skipped: there an M-polynomial can vanish on
    the whole training range and spurious operators appear.
    """
    for dL in range(1, dL_max + 1):
        for dM in range(min(dM_max, (n_train - 1) // 2) + 1):
            try:
                P = guess_recurrence(f, dL, dM, n_train, method)
            except InsufficientDataError:
                continue
            if P is not None:
                P.meta["minimality"] = f"minimal within searched degrees dL<={dL_max}, dM<={dM_max}"
                return P
    return None


# ---------------------------------------------------------------------------
# A-polynomials


@dataclass(frozen=True)
class APoly:
    """Integer polynomial ``sum c L^l M^m``; ``terms`` maps ``(l, m)`` to ``c``."""

    terms: Mapping[tuple[int, int], int]

    def __post_init__(self):
        object.__setattr__(self, "terms", {(int(l), int(m)): int(c) for (l, m), c in dict(self.terms).items() if c})

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> dict:
        return {"terms": [[l, m, c] for (l, m), c in sorted(self.terms.items())]}

    @classmethod
    def from_json(cls, data: Mapping) -> "APoly":
        return cls({(int(l), int(m)): int(c) for l, m, c in data["terms"]})

    def l_coeffs(self) -> dict[int, object]:
        """``{l: polynomial in M}`` over ``Q(M)`` (as field elements)."""
        out: dict[int, dict] = {}
        for (l, m), c in self.terms.items():
            out.setdefault(l, {})[(0, m)] = c
        return {l: _poly_from_terms(d) for l, d in out.items()}

    def times_L_minus_1(self) -> "APoly":
        out: dict[tuple[int, int], int] = {}
        for (l, m), c in self.terms.items():
            out[(l + 1, m)] = out.get((l + 1, m), 0) + c
            out[(l, m)] = out.get((l, m), 0) - c
        return APoly(out)

    def pretty(self) -> str:
        out = ""
        for (l, m), c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(x for x in (_power("L", l), _power("M", m)) if x)
            body = mono if mono and abs(c) == 1 else f"{abs(c)}*{mono}" if mono else str(abs(c))
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out or "0"


def _power(var: str, e: int) -> str:
    return "" if e == 0 else var if e == 1 else f"{var}^{e}"


def specialize_q1(P: OrePoly) -> APoly:
    """Set ``q^{1/4} = 1``; denominators are cleared first (a unit change only)."""
    if any(v.denom != _RING.one for v in P.terms.values()):
        P = _normalize(P, units_only=True)
    out: dict[tuple[int, int], int] = {}
    for k, d in P.integer_terms().items():
        for (_, m), c in d.items():
            out[(k, m)] = out.get((k, m), 0) + c
    A = APoly(out)
    if A.is_zero():
        warnings.warn("operator vanishes at q = 1", stacklevel=2)
    return A


@dataclass(frozen=True)
class AJVerdict:
    essentially_equal: bool
    witness: str
    normalization: str = "direct"

    def __str__(self) -> str:
        head = "essentially-equal" if self.essentially_equal else "different"
        return f"{head} ({self.normalization}): {self.witness}"


def _monic_compare(a: APoly, b: APoly) -> tuple[bool, str]:
    ca, cb = a.l_coeffs(), b.l_coeffs()
    if max(ca) != max(cb):
        return False, f"L-degrees differ: {max(ca)} vs {max(cb)}"
    la, lb = ca[max(ca)], cb[max(cb)]
    for l in sorted(set(ca) | set(cb), reverse=True):
        x = ca.get(l, FIELD(0)) / la
        y = cb.get(l, FIELD(0)) / lb
        if x != y:
            return False, f"first differing normalized coefficient at L^{l}: {x} vs {y}"
    return True, f"ratio {la / lb}"


def aj_compare(a: APoly, A: APoly) -> AJVerdict:
    """M-essential equality over ``Q(M)``; also tries the two placements of an extra factor ``L - 1``."""
    if a.is_zero() or A.is_zero():
        raise OreError("aj_compare needs nonzero polynomials")
    ok, witness = _monic_compare(a, A)
    if ok:
        return AJVerdict(True, witness, "direct")
    for label, x, y in (("alpha = (L-1) A", a, A.times_L_minus_1()), ("(L-1) alpha = A", a.times_L_minus_1(), A)):
        ok2, w2 = _monic_compare(x, y)
        if ok2:
            return AJVerdict(True, w2, label)
    return AJVerdict(False, witness, "direct")


# ---------------------------------------------------------------------------
# builtin sequences


def builtin_seq(name: str) -> Sequence:
    """``brace``, ``bracket``, ``bracket_factorial``, ``brace_factorial``, ``qbinom_diag``,
    ``qbinom_slice(k)`` (``n -> qbinom(n, k)``) or ``delta(k)``."""
    simple = {
        "brace": brace,
        "bracket": bracket,
        "bracket_factorial": lambda n: factorial("bracket", n),
        "brace_factorial": lambda n: factorial("brace", n),
        "qbinom_diag": lambda n: qbinom(2 * n, n),
    }
    if name in simple:
        return Sequence("laurent", simple[name], name)
    for prefix, make in (("delta(", lambda k: (lambda n: ONE if n == k else ZERO)), ("qbinom_slice(", lambda k: (lambda n: qbinom(n, k)))):
        if name.startswith(prefix) and name.endswith(")"):
            k = int(name[len(prefix) : -1])
            return Sequence("laurent", make(k), name)
    raise OreError(f"unknown builtin sequence {name!r}")
