import pytest

from weylkit.blocks import blocks
from weylkit.modules import CharacterCache, decomposition_numbers
from weylkit.roots import root_system, saturated_below

G2 = root_system("G2")
CACHE = CharacterCache()


def test_two_blocks_below_22():
    part = blocks((2, 2), 2, G2, CACHE)
    sets = part.as_sets()
    assert len(sets) == 2
    assert frozenset({(1, 1), (3, 1)}) in sets
    assert len(part.class_of((0, 0))) == 12


def test_single_weight():
    assert blocks((0, 0), 2, G2, CACHE).as_sets() == [frozenset({(0, 0)})]


def test_blocks_below_11():
    sets = set(blocks((1, 1), 2, G2, CACHE).as_sets())
    assert sets == {frozenset({(1, 1)}), frozenset({(0, 0), (1, 0), (0, 1), (2, 0)})}


def test_class_of_unknown_weight():
    with pytest.raises(KeyError):
        blocks((1, 0), 2, G2, CACHE).class_of((5, 5))


@pytest.mark.parametrize("top", [(1, 1), (3, 0), (2, 2)])
def test_partition_and_edges(top):
    part = blocks(top, 2, G2, CACHE)
    pi = saturated_below(top, G2)
    flat = [w for c in part.classes for w in c]
    assert sorted(flat) == sorted(pi) and len(flat) == len(set(flat))
    for lam in pi:
        for mu in decomposition_numbers(lam, 2, G2, CACHE):
            assert part.class_of(mu) == part.class_of(lam)


@pytest.mark.parametrize("small,big", [((1, 1), (2, 2)), ((3, 0), (2, 2)), ((2, 1), (3, 1))])
def test_refining_never_merges(small, big):
    coarse = blocks(big, 2, G2, CACHE)
    fine = blocks(small, 2, G2, CACHE)
    for c in fine.classes:
        assert len({coarse.class_of(w) for w in c}) == 1
