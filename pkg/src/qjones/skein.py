"""Kauffman bracket and Jones polynomial from planar diagram (PD) codes.

Crossings are quadruples ``[a, b, c, d]`` of edge labels listed
counterclockwise starting from the incoming under-strand.  Smoothing
conventions: the A-smoothing joins ``(a, b)`` and ``(c, d)``, the B-smoothing
joins ``(a, d)`` and ``(b, c)``.  With these, a positive kink multiplies the
bracket by ``-A^3``.

The bracket lives in ``Z[A^{+-1}]``; we identify ``A`` with ``q^{1/4}``, so a
bracket value is a :class:`~qjones.qpoly.LaurentPoly` whose exponent ``e``
means ``A^e``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .qpoly import ONE, LaurentPoly

__all__ = [
    "MalformedDiagramError",
    "Diagram",
    "UnionFind",
    "LOOP",
    "kauffman_bracket",
    "jones_from_pd",
]

LOOP = LaurentPoly({2: -1, -2: -1})  # -A^2 - A^-2


class MalformedDiagramError(ValueError):
    pass


class UnionFind:
    """Disjoint sets over hashable items, path halving plus union by size."""

    def __init__(self, items: Iterable = ()):
        self.parent: dict = {}
        self.size: dict = {}
        for x in items:
            self.add(x)

    def add(self, x) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True

    def count(self) -> int:
        return sum(1 for x in self.parent if self.parent[x] == x)


@dataclass(frozen=True)
class Diagram:
    """A link diagram: PD crossings, per-crossing signs and component count."""

    pd: tuple[tuple[int, int, int, int], ...]
    signs: tuple[int, ...]
    components: int = 1
    name: str = ""
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "pd", tuple(tuple(x) for x in self.pd))
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        self.validate()

    def validate(self) -> None:
        if len(self.signs) != len(self.pd):
            raise MalformedDiagramError("need one sign per crossing")
        if any(s not in (1, -1) for s in self.signs):
            raise MalformedDiagramError("signs must be +1 or -1")
        for x in self.pd:
            if len(x) != 4:
                raise MalformedDiagramError(f"crossing {x} is not a quadruple")
        counts = Counter(label for x in self.pd for label in x)
        bad = sorted(label for label, c in counts.items() if c != 2)
        if bad:
            raise MalformedDiagramError(f"edge labels {bad} do not appear exactly twice")
        if self.components < self.strand_components():
            raise MalformedDiagramError("component count below the number of strands in the PD code")

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def strand_components(self) -> int:
        """Number of link components met by crossings (edges glued along strands)."""
        uf = UnionFind(label for x in self.pd for label in x)
        for a, b, c, d in self.pd:
            uf.union(a, c)
            uf.union(b, d)
        return uf.count()

    def mirror(self) -> "Diagram":
        """Mirror image: every crossing switched, signs negated."""
        out = []
        for (a, b, c, d), s in zip(self.pd, self.signs):
            # the old over-strand becomes the under-strand; start at its incoming end
            out.append((d, a, b, c) if s > 0 else (b, c, d, a))
        return Diagram(tuple(out), tuple(-s for s in self.signs), self.components, self.name + "*", dict(self.meta))

    # ---------------------------------------------------------------- I/O
    def to_json(self) -> dict:
        return {"name": self.name, "pd": [list(x) for x in self.pd], "signs": list(self.signs), "components": self.components}

    @classmethod
    def from_json(cls, data: dict) -> "Diagram":
        try:
            pd = tuple(tuple(int(v) for v in x) for x in data["pd"])
            signs = tuple(int(s) for s in data["signs"])
        except (KeyError, TypeError) as exc:
            raise MalformedDiagramError(f"bad diagram record: {exc}") from None
        meta = {k: v for k, v in data.items() if k not in ("name", "pd", "signs", "components")}
        return cls(pd, signs, int(data.get("components", 1)), str(data.get("name", "")), meta)

    @classmethod
    def load(cls, path: str | Path) -> "Diagram":
        return cls.from_json(json.loads(Path(path).read_text()))


def _order_crossings(pd: Sequence[tuple[int, int, int, int]]) -> list[int]:
    """Greedy order keeping the set of open edges small."""
    remaining = set(range(len(pd)))
    open_labels: Counter = Counter()
    order = []
    while remaining:
        best = max(
            remaining,
            key=lambda i: (sum(1 for l in pd[i] if open_labels[l]), -i),
        )
        remaining.remove(best)
        order.append(best)
        for l in pd[best]:
            if open_labels[l]:
                del open_labels[l]
            else:
                open_labels[l] += 1
    return order


def _attach(matching: dict, x: int, y: int) -> tuple[dict, int]:
    """Glue an arc joining endpoints ``x`` and ``y``; returns (matching, closed loops)."""
    if x == y:
        return matching, 1
    px = matching.get(x)
    py = matching.get(y)
    m = dict(matching)
    if px is not None and py is not None:
        del m[x], m[y]
        if px == y:
            return m, 1
        m[px] = py
        m[py] = px
        return m, 0
    if px is not None:
        del m[x]
        m[px] = y
        m[y] = px
        return m, 0
    if py is not None:
        del m[y]
        m[py] = x
        m[x] = py
        return m, 0
    m[x] = y
    m[y] = x
    return m, 0


def _key(m: dict) -> tuple:
    return tuple(sorted((a, b) for a, b in m.items() if a < b))


def kauffman_bracket(d: Diagram) -> LaurentPoly:
    """Kauffman bracket ``<D>`` with ``<O> = -A^2 - A^{-2}`` (exponents count powers of ``A``)."""
    free_loops = d.components - d.strand_components()
    states: dict[tuple, LaurentPoly] = {(): ONE}
    for i in _order_crossings(d.pd):
        a, b, c, dd = d.pd[i]
        new: dict[tuple, LaurentPoly] = {}
        for key, val in states.items():
            base = dict()
            for u, v in key:
                base[u] = v
                base[v] = u
            for weight, arcs in ((1, ((a, b), (c, dd))), (-1, ((a, dd), (b, c)))):
                m, loops = base, 0
                for x, y in arcs:
                    m, l = _attach(m, x, y)
                    loops += l
                contrib = val.shift(weight)
                if loops:
                    contrib = contrib * LOOP**loops
                k = _key(m)
                prev = new.get(k)
                new[k] = contrib if prev is None else prev + contrib
        states = {k: v for k, v in new.items() if v}
    if set(states) - {()}:
        raise MalformedDiagramError("open edges remain after processing all crossings")
    result = states.get((), LaurentPoly())
    if free_loops:
        result = result * LOOP**free_loops
    return result


def jones_from_pd(d: Diagram) -> LaurentPoly:
    """``J = (-1)^m (-A^3)^{-w} <D>`` with ``A = q^{1/4}``; ``J(unknot) = q^{1/2} + q^{-1/2}``."""
    w = d.writhe
    sign = -1 if (d.components + w) % 2 else 1
    return kauffman_bracket(d).shift(-3 * w) * sign
