from itertools import product

import pytest
from hypothesis import given, strategies as st

from weylkit.roots import (
    Character,
    UnknownType,
    dominance_le,
    hasse_diagram,
    root_system,
    saturated_below,
    weyl_character,
    weyl_dimension,
)

G2 = root_system("G2")
GRID = [(a, b) for a in range(4) for b in range(4)]
PI_ORDER = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (3, 0), (0, 2), (2, 1), (4, 0), (1, 2), (3, 1), (5, 0), (0, 3), (2, 2)]


def test_g2_positive_root_table():
    assert [r.weight for r in G2.positive_roots] == [(2, -1), (-3, 2), (-1, 1), (1, 0), (3, -1), (0, 1)]
    assert [r.coords for r in G2.positive_roots] == [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
    assert G2.positive_roots[3].weight == (1, 0)
    assert G2.rho == (1, 1)


def test_a1():
    a1 = root_system("A1")
    assert [r.weight for r in a1.positive_roots] == [(2,)]


def test_unknown_type():
    with pytest.raises(UnknownType):
        root_system("Q7")
    with pytest.raises(UnknownType):
        root_system("E", 6)


@pytest.mark.parametrize("label,count", [("A3", 6), ("B3", 9), ("C3", 9), ("D4", 12), ("F4", 24), ("B2", 4)])
def test_other_types_have_the_right_number_of_roots(label, count):
    rs = root_system(label)
    assert len(rs.positive_roots) == count
    # the Steinberg dimension is 2^|positive roots| at p = 2
    assert weyl_dimension(rs.rho, rs) == 2**count


def test_dominance_examples():
    assert dominance_le((0, 0), (2, 2), G2)
    assert dominance_le((3, 1), (3, 1), G2)
    assert dominance_le((1, 0), (0, 1), G2)
    assert not dominance_le((0, 1), (1, 0), G2)


def test_saturated_sets():
    assert saturated_below((2, 2), G2) == PI_ORDER
    assert saturated_below((0, 0), G2) == [(0, 0)]
    assert set(saturated_below((1, 1), G2)) == {(0, 0), (1, 0), (0, 1), (2, 0), (1, 1)}


def brute_force_below(lam, rs, bound=20):
    out = set()
    for c in product(range(bound), repeat=rs.rank):
        mu = tuple(l - d for l, d in zip(lam, rs.from_simple(c)))
        if rs.is_dominant(mu):
            out.add(mu)
    return out


@pytest.mark.parametrize("lam", [(1, 1), (2, 2), (0, 3)])
def test_saturated_matches_brute_force(lam):
    assert set(saturated_below(lam, G2)) == brute_force_below(lam, G2)


def test_hasse_diagram_of_pi():
    edges = {frozenset(e) for e in hasse_diagram(PI_ORDER, G2)}
    expected_chain = [frozenset(e) for e in zip(PI_ORDER[:11], PI_ORDER[1:11])]
    extra = {frozenset(e) for e in [((3, 1), (5, 0)), ((3, 1), (0, 3)), ((5, 0), (2, 2)), ((0, 3), (2, 2))]}
    assert edges == set(expected_chain) | extra
    assert len(edges) == 14
    assert hasse_diagram([(0, 0)], G2) == []
    assert len(hasse_diagram([(0, 0), (1, 0)], G2)) == 1


def test_weyl_dimensions():
    assert weyl_dimension((1, 1), G2) == 64
    assert weyl_dimension((0, 0), G2) == 1
    assert weyl_dimension((2, 2), G2) == 729


def test_weyl_dimension_by_hand():
    # product over positive roots of <lam + rho, a^v> / <rho, a^v> for (2,2)
    num = den = 1
    for k in range(6):
        num *= G2.pairing((3, 3), k)
        den *= G2.pairing((1, 1), k)
    assert num // den == 729


def test_small_characters():
    ch = weyl_character((1, 0), G2)
    assert len(ch) == 7 and set(ch.values()) == {1}
    assert weyl_character((0, 0), G2) == {(0, 0): 1}
    adj = weyl_character((0, 1), G2)
    assert adj[(0, 0)] == 2 and adj.dim == 14


@pytest.mark.parametrize("lam", GRID)
def test_character_total_and_weyl_invariance(lam):
    ch = weyl_character(lam, G2)
    assert ch.dim == weyl_dimension(lam, G2)
    assert ch[lam] == 1
    for mu, m in ch.items():
        for i in range(2):
            assert ch.get(G2.reflect(mu, i), 0) == m


weights = st.sampled_from(GRID)


@given(weights, weights, weights)
def test_dominance_is_a_partial_order(a, b, c):
    assert dominance_le(a, a, G2)
    if dominance_le(a, b, G2) and dominance_le(b, a, G2):
        assert a == b
    if dominance_le(a, b, G2) and dominance_le(b, c, G2):
        assert dominance_le(a, c, G2)


@given(weights)
def test_saturated_is_closed_and_ordered(lam):
    pi = saturated_below(lam, G2)
    for mu in pi:
        for nu in GRID + [(5, 0), (4, 0)]:
            if dominance_le(nu, mu, G2):
                assert nu in pi
    for i, mu in enumerate(pi):
        for nu in pi[i + 1:]:
            assert not (dominance_le(nu, mu, G2) and nu != mu)


def test_character_arithmetic():
    a = Character({(1, 0): 2, (0, 0): 1})
    b = Character({(0, 0): 1})
    assert (a - b) == {(1, 0): 2}
    assert (a * b) == a
    assert a.dilate(2) == {(2, 0): 2, (0, 0): 1}
