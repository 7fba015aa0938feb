"""Independent reference computations used only by the tests and by fixture generation.

* ``brute_bracket``: the plain 2^c state sum with loops counted by union-find.
* ``cable`` / ``cabled_colored_jones``: colored Jones from blackboard cables
  and the Chebyshev expansion of the Jones-Wenzl idempotents.
"""

from __future__ import annotations

import itertools

from qjones.qpoly import ONE, ZERO, LaurentPoly
from qjones.skein import LOOP, Diagram, UnionFind, kauffman_bracket


def brute_bracket(d: Diagram) -> LaurentPoly:
    total = ZERO
    labels = sorted({l for x in d.pd for l in x})
    free = d.components - d.strand_components()
    for state in itertools.product((1, -1), repeat=len(d.pd)):
        uf = UnionFind(labels)
        for s, (a, b, c, e) in zip(state, d.pd):
            if s == 1:
                uf.union(a, b)
                uf.union(c, e)
            else:
                uf.union(a, e)
                uf.union(b, c)
        loops = uf.count() + free
        total = total + LaurentPoly.monomial(sum(state)) * LOOP**loops
    return total


def _chebyshev(k: int) -> list[int]:
    """Integer coefficients of S_k(z) with S_0 = 1, S_1 = z, S_{k+1} = z S_k - S_{k-1}."""
    prev, cur = [1], [0, 1]
    if k == 0:
        return prev
    for _ in range(k - 1):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return cur


def cable(d: Diagram, j: int) -> Diagram:
    """Blackboard ``j``-parallel of a knot diagram whose labels need not follow orientation."""
    if d.components != 1:
        raise ValueError("cabling oracle handles knots only")
    if j < 1:
        raise ValueError("cable needs j >= 1")
    counter = itertools.count(1)
    ext: dict[tuple[int, int], int] = {}

    def edge(e: int, i: int) -> int:
        key = (e, i)
        if key not in ext:
            ext[key] = next(counter)
        return ext[key]

    pd = []
    signs = []
    for (a, b, c, e), s in zip(d.pd, d.signs):
        V = {}
        H = {}
        for x in range(j):
            V[x, 0] = edge(a, x)
            V[x, j] = edge(c, x)
            for y in range(1, j):
                V[x, y] = next(counter)
        for y in range(j):
            copy = j - 1 - y if s > 0 else y
            H[y, 0] = edge(e, copy)
            H[y, j] = edge(b, copy)
            for x in range(1, j):
                H[y, x] = next(counter)
        for x in range(j):
            for y in range(j):
                pd.append((V[x, y], H[y, x + 1], V[x, y + 1], H[y, x]))
                signs.append(s)
    if not pd:
        return Diagram((), (), j)
    return Diagram(tuple(pd), tuple(signs), j, f"{d.name}^({j})")


def cabled_bracket(d: Diagram, j: int) -> LaurentPoly:
    if j == 0:
        return ONE
    if not d.pd:
        return LOOP**j
    return kauffman_bracket(cable(d, j))


def cabled_colored_jones(d: Diagram, n: int) -> LaurentPoly:
    """``J(n)`` normalized so that the unknot gives ``[n]``."""
    cheb = _chebyshev(n - 1)
    total = ZERO
    for i, c in enumerate(cheb):
        if c:
            total = total + cabled_bracket(d, i) * c
    w = d.writhe
    sign = (-1) ** ((n - 1) * (1 + w))
    return total.shift(-w * (n * n - 1)) * sign
