"""Linkage classes of a saturated set of dominant weights."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .modules import CharacterCache, decomposition_numbers
from .roots import RootSystem, Weight, saturated_below


@dataclass(frozen=True)
class BlockPartition:
    """A saturated set split into classes; each class sorted in the linear order of the set."""

    weights: Tuple[Weight, ...]
    classes: Tuple[Tuple[Weight, ...], ...]

    def class_of(self, mu: Sequence[int]) -> Tuple[Weight, ...]:
        mu = tuple(mu)
        for c in self.classes:
            if mu in c:
                return c
        raise KeyError(mu)

    def as_sets(self) -> List[frozenset]:
        return [frozenset(c) for c in self.classes]


def blocks(
    lam: Sequence[int], p: int, rs: RootSystem, cache: Optional[CharacterCache] = None
) -> BlockPartition:
    """Connected components of ``saturated_below(lam)`` under shared composition factors."""
    pi = saturated_below(tuple(lam), rs)
    parent: Dict[Weight, Weight] = {w: w for w in pi}

    def find(w: Weight) -> Weight:
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    for mu in pi:
        for nu in decomposition_numbers(mu, p, rs, cache):
            a, b = find(mu), find(nu)
            if a != b:
                parent[a] = b
    groups: Dict[Weight, List[Weight]] = {}
    for w in pi:
        groups.setdefault(find(w), []).append(w)
    classes = sorted((tuple(g) for g in groups.values()), key=lambda c: pi.index(c[0]))
    return BlockPartition(tuple(pi), tuple(classes))
