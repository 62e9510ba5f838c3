"""Root systems, weights, dominance order and Weyl characters.

Weights are tuples of integers in the basis of fundamental weights, so for
G2 the pair ``(a, b)`` means ``a*w1 + b*w2``.  Roots are stored both in
simple-root coordinates and as weights.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

Weight = Tuple[int, ...]


class UnknownType(ValueError):
    pass


# ---------------------------------------------------------------------------
# Cartan data


def _classical_simple_roots(kind: str, n: int) -> List[List[Fraction]]:
    dim = n + 1 if kind == "A" else n
    e = lambda i: [Fraction(int(k == i)) for k in range(dim)]  # noqa: E731
    sub = lambda a, b: [x - y for x, y in zip(a, b)]  # noqa: E731
    add = lambda a, b: [x + y for x, y in zip(a, b)]  # noqa: E731
    roots = [sub(e(i), e(i + 1)) for i in range(n - 1)]
    if kind == "A":
        roots.append(sub(e(n - 1), e(n)))
    elif kind == "B":
        roots.append(e(n - 1))
    elif kind == "C":
        roots.append([2 * x for x in e(n - 1)])
    elif kind == "D":
        roots.append(add(e(n - 2), e(n - 1)))
    return roots


def _inner_products(kind: str, n: int) -> List[List[Fraction]]:
    """Symmetric matrix of (alpha_i, alpha_j) for the simple roots (Bourbaki numbering)."""
    if kind == "G" and n == 2:
        # alpha_1 short
        return [[Fraction(2), Fraction(-3)], [Fraction(-3), Fraction(6)]]
    if kind == "F" and n == 4:
        h = Fraction(1, 2)
        roots = [
            [0, 1, -1, 0],
            [0, 0, 1, -1],
            [0, 0, 0, 1],
            [h, -h, -h, -h],
        ]
        roots = [[Fraction(x) for x in r] for r in roots]
    elif kind in "ABCD":
        if (kind == "B" and n < 2) or (kind == "C" and n < 2) or (kind == "D" and n < 3):
            raise UnknownType(f"{kind}{n} is not a valid finite type")
        roots = _classical_simple_roots(kind, n)
    else:
        raise UnknownType(f"unsupported type {kind}{n}")
    return [[sum(x * y for x, y in zip(a, b)) for b in roots] for a in roots]


@dataclass(frozen=True)
class Root:
    """A positive root: simple-root coordinates and its weight."""

    index: int
    coords: Tuple[int, ...]
    weight: Weight

    @property
    def height(self) -> int:
        return sum(self.coords)

    @property
    def is_simple(self) -> bool:
        return self.height == 1


@dataclass(frozen=True)
class RootSystem:
    label: str
    rank: int
    cartan: Tuple[Tuple[int, ...], ...]
    """``cartan[i][j] = <alpha_i, alpha_j^vee>``; row ``i`` is the weight of alpha_i."""
    inner: Tuple[Tuple[Fraction, ...], ...] = field(repr=False)
    positive_roots: Tuple[Root, ...] = field(repr=False)

    # -- coordinates -----------------------------------------------------

    @cached_property
    def _cartan_inverse(self) -> List[List[Fraction]]:
        n = self.rank
        a = [[Fraction(self.cartan[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for c in range(n):
            k = next(i for i in range(c, n) if a[i][c] != 0)
            a[c], a[k] = a[k], a[c]
            piv = a[c][c]
            a[c] = [x / piv for x in a[c]]
            for i in range(n):
                if i != c and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        return [row[n:] for row in a]

    def to_simple(self, weight: Sequence[int]) -> Tuple[Fraction, ...]:
        """Coordinates of a weight in the basis of simple roots (rational in general)."""
        inv = self._cartan_inverse
        n = self.rank
        return tuple(sum(Fraction(weight[i]) * inv[i][j] for i in range(n)) for j in range(n))

    def from_simple(self, coords: Sequence[int]) -> Weight:
        n = self.rank
        return tuple(sum(coords[i] * self.cartan[i][j] for i in range(n)) for j in range(n))

    def simple_root(self, i: int) -> Weight:
        return tuple(self.cartan[i])

    def inner_product(self, mu: Sequence[int], nu: Sequence[int]) -> Fraction:
        c = self.to_simple(mu)
        return sum(c[i] * nu[i] * self.inner[i][i] / 2 for i in range(self.rank))

    def pairing(self, weight: Sequence[int], root: int) -> int:
        """``<weight, alpha^vee>`` for the positive root with the given index."""
        a = self.positive_roots[root]
        num = sum(a.coords[i] * weight[i] * self.inner[i][i] / 2 for i in range(self.rank))
        val = 2 * num / self.root_length2(root)
        assert val.denominator == 1
        return int(val)

    def root_length2(self, root: int) -> Fraction:
        c = self.positive_roots[root].coords
        n = self.rank
        return sum(c[i] * c[j] * self.inner[i][j] for i in range(n) for j in range(n))

    @cached_property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @cached_property
    def root_index(self) -> Dict[Tuple[int, ...], int]:
        return {a.coords: a.index for a in self.positive_roots}

    @cached_property
    def simple_index(self) -> Tuple[int, ...]:
        """Index of alpha_i in ``positive_roots`` for each simple i."""
        return tuple(self.root_index[tuple(int(k == i) for k in range(self.rank))] for i in range(self.rank))

    @cached_property
    def extraspecial(self) -> Dict[int, Tuple[int, int, int]]:
        """For each non-simple positive root ``g``: ``(i, b, r)`` with ``g = alpha_i + beta_b``.

        ``i`` is the first simple root for which ``g - alpha_i`` is a root and
        ``r`` is the largest ``t`` with ``beta_b - t*alpha_i`` a root (or 0).
        Root vectors are defined by ``x_g = [x_i, x_b] / (r + 1)``.
        """
        out = {}
        for g in self.positive_roots:
            if g.is_simple:
                continue
            for i in range(self.rank):
                c = list(g.coords)
                c[i] -= 1
                if tuple(c) in self.root_index:
                    b = self.root_index[tuple(c)]
                    r = 0
                    while True:
                        c[i] -= 1
                        if tuple(c) not in self.root_index:
                            break
                        r += 1
                    out[g.index] = (i, b, r)
                    break
        return out

    # -- Weyl group ------------------------------------------------------

    def reflect(self, weight: Sequence[int], i: int) -> Weight:
        k = weight[i]
        return tuple(w - k * a for w, a in zip(weight, self.cartan[i]))

    def is_dominant(self, weight: Sequence[int]) -> bool:
        return all(x >= 0 for x in weight)

    def dominant_conjugate(self, weight: Sequence[int]) -> Weight:
        w = tuple(weight)
        while True:
            neg = next((i for i, x in enumerate(w) if x < 0), None)
            if neg is None:
                return w
            w = self.reflect(w, neg)

    def orbit(self, weight: Sequence[int]) -> List[Weight]:
        start = tuple(weight)
        seen = {start}
        todo = [start]
        while todo:
            w = todo.pop()
            for i in range(self.rank):
                v = self.reflect(w, i)
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        return sorted(seen)

    def height(self, weight: Sequence[int]) -> Fraction:
        return sum(self.to_simple(weight))

    def __str__(self) -> str:
        return self.label


_CACHE: Dict[Tuple[str, int], RootSystem] = {}


def _parse_label(type_: str, rank: int | None) -> Tuple[str, int]:
    t = type_.strip().upper()
    if len(t) > 1:
        kind, n = t[0], int(t[1:])
        if rank is not None and rank != n:
            raise UnknownType(f"rank {rank} does not match type {type_}")
        return kind, n
    if rank is None:
        raise UnknownType("rank required")
    return t, int(rank)


def root_system(type_: str, rank: int | None = None) -> RootSystem:
    """Build the root system of the given finite type, e.g. ``root_system("G", 2)`` or ``root_system("G2")``.

    Positive roots are ordered by height, then by simple-root coordinates in
    decreasing lexicographic order; for G2 this is the order
    ``a1, a2, a1+a2, 2a1+a2, 3a1+a2, 3a1+2a2``.
    """
    kind, n = _parse_label(type_, rank)
    if (kind, n) in _CACHE:
        return _CACHE[(kind, n)]
    if kind not in "ABCDFG" or n < 1:
        raise UnknownType(f"unsupported type {type_}")
    inner = _inner_products(kind, n)
    cartan = tuple(tuple(int(2 * inner[i][j] / inner[j][j]) for j in range(n)) for i in range(n))
    # positive roots by root strings: beta + alpha_i is a root iff r - <beta, alpha_i^vee> > 0
    found = {tuple(int(k == i) for k in range(n)) for i in range(n)}
    layer = sorted(found)
    while layer:
        nxt = set()
        for c in layer:
            wt = [sum(c[a] * cartan[a][j] for a in range(n)) for j in range(n)]
            for i in range(n):
                if c == tuple(int(k == i) for k in range(n)):
                    continue
                r = 0
                d = list(c)
                while True:
                    d[i] -= 1
                    if tuple(d) not in found:
                        break
                    r += 1
                if r - wt[i] > 0:
                    up = list(c)
                    up[i] += 1
                    nxt.add(tuple(up))
        nxt -= found
        found |= nxt
        layer = sorted(nxt)
    ordered = sorted(found, key=lambda c: (sum(c), tuple(-x for x in c)))
    roots = tuple(
        Root(k, c, tuple(sum(c[a] * cartan[a][j] for a in range(n)) for j in range(n)))
        for k, c in enumerate(ordered)
    )
    rs = RootSystem(f"{kind}{n}", n, cartan, tuple(tuple(r) for r in inner), roots)
    _CACHE[(kind, n)] = rs
    return rs


# ---------------------------------------------------------------------------
# dominance


def difference_coords(mu: Sequence[int], lam: Sequence[int], rs: RootSystem) -> Tuple[Fraction, ...]:
    return rs.to_simple(tuple(a - b for a, b in zip(lam, mu)))


def dominance_le(mu: Sequence[int], lam: Sequence[int], rs: RootSystem) -> bool:
    """True iff ``lam - mu`` is a non-negative integral combination of simple roots."""
    c = difference_coords(mu, lam, rs)
    return all(x.denominator == 1 and x >= 0 for x in c)


def linear_order_key(mu: Sequence[int], lam: Sequence[int], rs: RootSystem):
    """Sort key refining dominance below ``lam``: larger depth first, then lexicographic."""
    c = difference_coords(mu, lam, rs)
    return (-sum(c), c)


def saturated_below(lam: Sequence[int], rs: RootSystem) -> List[Weight]:
    """All dominant weights ``mu <= lam``, smallest first in a linear order refining dominance."""
    lam = tuple(lam)
    if not rs.is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    top = rs.to_simple(lam)
    out = []
    for c in itertools.product(*(range(int(x) + 1) for x in top)):
        mu = tuple(a - b for a, b in zip(lam, rs.from_simple(c)))
        if rs.is_dominant(mu):
            out.append(mu)
    return sorted(out, key=lambda m: linear_order_key(m, lam, rs))


def sort_weights(weights: Iterable[Sequence[int]], rs: RootSystem) -> List[Weight]:
    """Sort dominant weights by a linear order refining dominance (smallest first)."""
    ws = [tuple(w) for w in weights]
    if not ws:
        return []
    return sorted(ws, key=lambda m: (rs.height(m), tuple(-x for x in rs.to_simple(m))))


def hasse_diagram(weights: Sequence[Sequence[int]], rs: RootSystem) -> List[Tuple[Weight, Weight]]:
    """Covering relations ``(lower, upper)`` of the dominance order on ``weights``."""
    ws = [tuple(w) for w in weights]
    less = {(a, b) for a in ws for b in ws if a != b and dominance_le(a, b, rs)}
    edges = []
    for a, b in sorted(less):
        if not any((a, c) in less and (c, b) in less for c in ws):
            edges.append((a, b))
    return edges


# ---------------------------------------------------------------------------
# characters


class Character(dict):
    """Formal character: weight -> multiplicity, zero entries never stored."""

    def __init__(self, data: Mapping | Iterable = ()):
        super().__init__()
        items = data.items() if isinstance(data, Mapping) else data
        for w, m in items:
            if m:
                self[tuple(w)] = self.get(tuple(w), 0) + m

    @property
    def dim(self) -> int:
        return sum(self.values())

    def __add__(self, other: "Character") -> "Character":
        out = Character(self)
        for w, m in other.items():
            v = out.get(w, 0) + m
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return out

    def __sub__(self, other: "Character") -> "Character":
        return self + other.scale(-1)

    def scale(self, k: int) -> "Character":
        return Character({w: k * m for w, m in self.items()})

    def __mul__(self, other: "Character") -> "Character":
        out: Dict[Weight, int] = {}
        for w1, m1 in self.items():
            for w2, m2 in other.items():
                w = tuple(a + b for a, b in zip(w1, w2))
                out[w] = out.get(w, 0) + m1 * m2
        return Character(out)

    def dilate(self, k: int) -> "Character":
        """The character with every weight multiplied by ``k`` (Frobenius twist for k = p)."""
        return Character({tuple(k * x for x in w): m for w, m in self.items()})

    def is_nonnegative(self) -> bool:
        return all(m > 0 for m in self.values())

    def dominant_part(self) -> Dict[Weight, int]:
        return {w: m for w, m in self.items() if all(x >= 0 for x in w)}

    def sorted_items(self) -> List[Tuple[Weight, int]]:
        return sorted(self.items())


def weyl_dimension(lam: Sequence[int], rs: RootSystem) -> int:
    lr = tuple(a + b for a, b in zip(lam, rs.rho))
    num = Fraction(1)
    for a in rs.positive_roots:
        num *= Fraction(rs.pairing(lr, a.index), rs.pairing(rs.rho, a.index))
    assert num.denominator == 1
    return int(num)


_CHAR_CACHE: Dict[Tuple[str, Weight], Character] = {}


def dominant_multiplicities(lam: Sequence[int], rs: RootSystem) -> Dict[Weight, int]:
    """Freudenthal multiplicities of the dominant weights of the simple char-0 module."""
    lam = tuple(lam)
    lr = tuple(a + b for a, b in zip(lam, rs.rho))
    top = rs.inner_product(lr, lr)
    dom = saturated_below(lam, rs)
    mult: Dict[Weight, int] = {}
    in_set = set(dom)

    def m(nu: Weight) -> int:
        d = rs.dominant_conjugate(nu)
        return mult.get(d, 0) if d in in_set else 0

    for mu in reversed(dom):
        if mu == lam:
            mult[mu] = 1
            continue
        total = Fraction(0)
        for a in rs.positive_roots:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, a.weight))
                if not dominance_le(rs.dominant_conjugate(nu), lam, rs):
                    break
                mn = m(nu)
                if mn:
                    total += mn * rs.inner_product(nu, a.weight)
                k += 1
        mr = tuple(a + b for a, b in zip(mu, rs.rho))
        val = 2 * total / (top - rs.inner_product(mr, mr))
        assert val.denominator == 1
        mult[mu] = int(val)
    return mult


def weyl_character(lam: Sequence[int], rs: RootSystem) -> Character:
    """chi(lam) as a full weight -> multiplicity map (Freudenthal recursion plus Weyl orbits)."""
    key = (rs.label, tuple(lam))
    if key not in _CHAR_CACHE:
        out = {}
        for mu, k in dominant_multiplicities(lam, rs).items():
            for w in rs.orbit(mu):
                out[w] = k
        _CHAR_CACHE[key] = Character(out)
    return Character(_CHAR_CACHE[key])


def weights_of(lam: Sequence[int], rs: RootSystem) -> List[Weight]:
    """Weights of chi(lam), highest first (by depth below lam, then lexicographic)."""
    ch = weyl_character(lam, rs)
    return sorted(ch, key=lambda w: (sum(difference_coords(w, lam, rs)), w))


def iter_dominant(ch: Mapping[Weight, int]) -> Iterator[Tuple[Weight, int]]:
    for w, m in ch.items():
        if all(x >= 0 for x in w):
            yield w, m
