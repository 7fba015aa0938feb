import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_bracket
from qjones.cyclojones import colored_jones, parity_class
from qjones.fixtures import load_knot
from qjones.qpoly import LaurentPoly
from qjones.skein import LOOP, Diagram, MalformedDiagramError, jones_from_pd, kauffman_bracket

UNKNOT = Diagram((), (), 1, "unknot")
KINK = Diagram(((1, 1, 2, 2),), (1,), 1, "kinked unknot")


def braid_closure(word, strands: int) -> Diagram:
    """Closure of a braid word; letter ``+/-i`` is sigma_i^{+-1} acting on positions i, i+1."""
    cur = list(range(1, strands + 1))
    start = list(cur)
    nxt = strands + 1
    pd, signs = [], []
    for g in word:
        i = abs(g) - 1
        a, b = cur[i], cur[i + 1]
        lo, hi = nxt, nxt + 1
        nxt += 2
        if g > 0:
            # strand at i crosses over to i+1; under-strand enters at b
            pd.append([b, hi, lo, a])
        else:
            pd.append([a, b, hi, lo])
        signs.append(1 if g > 0 else -1)
        cur[i], cur[i + 1] = lo, hi
    close = {cur[p]: start[p] for p in range(strands)}
    pd = [tuple(close.get(v, v) for v in x) for x in pd]
    perm = list(range(strands))
    for g in word:
        i = abs(g) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    seen, cycles = set(), 0
    for s in range(strands):
        if s not in seen:
            cycles += 1
            while s not in seen:
                seen.add(s)
                s = perm[s]
    return Diagram(tuple(pd), tuple(signs), cycles, "braid" + str(list(word)))


def _mirror_q(p: LaurentPoly) -> LaurentPoly:
    return p.invert_q()


LETTERS = st.sampled_from([1, -1, 2, -2])
WORDS = st.lists(LETTERS, max_size=5)


def test_unknot_and_unlink():
    assert kauffman_bracket(UNKNOT) == LaurentPoly({2: -1, -2: -1})
    unlink = Diagram((), (), 2, "unlink")
    assert kauffman_bracket(unlink) == LOOP**2


def test_trefoil_matches_brute_force():
    d = load_knot("trefoil").diagram
    assert kauffman_bracket(d) == brute_bracket(d)


def test_fixture_diagrams_match_brute_force():
    for name in ("trefoil", "figure8"):
        d = load_knot(name).diagram
        assert kauffman_bracket(d) == brute_bracket(d)
        assert kauffman_bracket(d.mirror()) == kauffman_bracket(d).invert_q()


def test_jones_unknot():
    assert jones_from_pd(UNKNOT) == LaurentPoly({2: 1, -2: 1})


def test_r1_kink():
    assert kauffman_bracket(KINK) == kauffman_bracket(UNKNOT) * LaurentPoly({3: -1})
    assert jones_from_pd(KINK) == jones_from_pd(UNKNOT)


def test_trefoil_jones_matches_colored_jones():
    fx = load_knot("trefoil")
    assert jones_from_pd(fx.diagram) == colored_jones(fx.coeffs, 2)


def test_figure8_jones_matches_colored_jones():
    fx = load_knot("figure8")
    J = colored_jones(fx.coeffs, 2)
    assert jones_from_pd(fx.diagram) == J
    assert J == LaurentPoly({10: 1, -10: 1})


def test_braid_closures_agree_with_fixtures():
    trefoil = load_knot("trefoil")
    closure = braid_closure([1, 1, 1], 2)
    J = jones_from_pd(closure)
    assert J in (colored_jones(trefoil.coeffs, 2), _mirror_q(colored_jones(trefoil.coeffs, 2)))
    fig8 = braid_closure([1, -2, 1, -2], 3)
    assert jones_from_pd(fig8) == colored_jones(load_knot("figure8").coeffs, 2)


def test_braid_unlinks():
    assert kauffman_bracket(braid_closure([], 3)) == LOOP**3
    assert kauffman_bracket(braid_closure([1, -1], 2)) == LOOP**2


@given(WORDS)
def test_closure_matches_brute_force(word):
    d = braid_closure(word, 3)
    assert kauffman_bracket(d) == brute_bracket(d)


@given(WORDS, st.integers(0, 5), st.sampled_from([1, 2]), st.sampled_from([1, -1]))
def test_reidemeister_ii(word, pos, i, s):
    pos = min(pos, len(word))
    moved = word[:pos] + [s * i, -s * i] + word[pos:]
    assert kauffman_bracket(braid_closure(moved, 3)) == kauffman_bracket(braid_closure(word, 3))


@given(WORDS, st.integers(0, 5), st.sampled_from([1, -1]))
def test_reidemeister_iii(word, pos, s):
    pos = min(pos, len(word))
    left = word[:pos] + [s, 2 * s, s] + word[pos:]
    right = word[:pos] + [2 * s, s, 2 * s] + word[pos:]
    assert kauffman_bracket(braid_closure(left, 3)) == kauffman_bracket(braid_closure(right, 3))


@given(WORDS)
def test_r1_via_markov_stabilization(word):
    """Adding a strand with one extra sigma_2 introduces a single positive kink."""
    base = braid_closure([w for w in word if abs(w) == 1], 2)
    stab = braid_closure([w for w in word if abs(w) == 1] + [2], 3)
    assert kauffman_bracket(stab) == kauffman_bracket(base) * LaurentPoly({3: -1})
    assert jones_from_pd(stab) == jones_from_pd(base)


def test_jones_parity_on_fixtures():
    for name in ("unknot", "trefoil", "figure8"):
        J = jones_from_pd(load_knot(name).diagram)
        assert J.exponent_classes(4) <= {parity_class(2)}


def test_malformed_diagrams():
    with pytest.raises(MalformedDiagramError):
        Diagram(((1, 2, 3, 4),), (1,), 1)
    with pytest.raises(MalformedDiagramError):
        Diagram(((1, 1, 2, 2),), (), 1)
    with pytest.raises(MalformedDiagramError):
        Diagram(((1, 1, 2, 2),), (2,), 1)


def test_json_round_trip():
    d = load_knot("figure8").diagram
    assert Diagram.from_json(d.to_json()) == d
