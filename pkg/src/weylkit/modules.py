"""Weyl modules over F_p and their submodule structure.

``Delta(lam)`` is the reduction mod p of the lattice built in
:mod:`weylkit.lattice`.  Every module here is a direct sum of weight
spaces, and every submodule is recorded weight space by weight space as an
echelon basis.  Closure under the hyperalgebra uses the divided powers of
the simple root vectors, which generate it.

Quotients are always flattened: ``Delta/S`` keeps a reference to ``Delta``
and to ``S`` in ``Delta`` coordinates, and a quotient of a quotient is
turned into ``Delta/S'`` for the preimage ``S'``.
"""

from __future__ import annotations

import logging
import threading
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .lattice import IntegralModule
from .linalg import Echelon, is_prime, nullspace_fp, rank_fp
from .roots import (
    Character,
    RootSystem,
    Weight,
    dominance_le,
    weyl_character,
)

log = logging.getLogger(__name__)

ENUMERATION_CAP = 4096


class EnumerationTooLarge(RuntimeError):
    """A maximal-vector space is too large to enumerate projectively."""


class NotASubmodule(ValueError):
    """The given subspace is not a submodule of the given module."""


def _layer_sort(weights: Iterable[Weight], rs: RootSystem) -> List[Weight]:
    return sorted(weights, key=lambda w: (rs.height(w), w), reverse=True)


@lru_cache(maxsize=64)
def integral_module(lam: Weight, rs: RootSystem) -> IntegralModule:
    return IntegralModule(lam, rs)


# ---------------------------------------------------------------------------
# modules


class _Module:
    """Common interface of Weyl modules and their quotients."""

    lam: Weight
    p: int
    rs: RootSystem
    weyl: "WeylModule"

    def dim_at(self, mu: Weight) -> int:
        raise NotImplementedError

    def action(self, kind: str, i: int, m: int, src: Weight) -> Optional[np.ndarray]:
        """Matrix of ``x_i^(m)`` / ``y_i^(m)`` from ``src``; None if source or target is zero."""
        raise NotImplementedError

    @property
    def weights(self) -> List[Weight]:
        return [w for w in self.weyl.lattice.weights if self.dim_at(w)]

    def dim(self) -> int:
        return sum(self.dim_at(w) for w in self.weyl.lattice.weights)

    def character(self) -> Character:
        return Character({w: self.dim_at(w) for w in self.weights})

    def dominant_weights(self) -> List[Weight]:
        return [w for w in self.weights if self.rs.is_dominant(w)]

    def generators(self, src: Weight) -> Iterator[Tuple[Weight, np.ndarray]]:
        """All nonzero simple divided-power actions out of ``src``: (target, matrix)."""
        lat = self.weyl.lattice
        for i in range(self.rs.rank):
            for kind, sign in (("x", 1), ("y", -1)):
                top = lat.max_power(i, src, up=(kind == "x"))
                for m in range(1, top + 1):
                    a = self.action(kind, i, m, src)
                    if a is not None:
                        yield lat._simple_shift(src, i, sign * m), a

    def zero(self) -> "Submodule":
        return Submodule(self, {})

    def element(self, mu: Weight, coords) -> "ModuleElement":
        return ModuleElement(self, tuple(mu), np.mod(np.asarray(coords, dtype=np.int64), self.p))


class WeylModule(_Module):
    """``Delta(lam) = V(lam)_Z (x) F_p`` with mod-p action and Gram matrices."""

    def __init__(self, lam: Sequence[int], p: int, rs: RootSystem):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.lam = tuple(lam)
        self.p = p
        self.rs = rs
        self.lattice = integral_module(self.lam, rs)
        self.weyl = self
        self._act: Dict[Tuple[str, int, int, Weight], Optional[np.ndarray]] = {}

    def __repr__(self) -> str:
        return f"WeylModule({self.rs.label}, p={self.p}, lam={self.lam})"

    def dim_at(self, mu: Weight) -> int:
        return self.lattice.dims.get(tuple(mu), 0)

    def action(self, kind, i, m, src):
        key = (kind, i, m, src)
        if key not in self._act:
            a = self.lattice.simple_action(kind, i, m, src) if src in self.lattice.dims else None
            self._act[key] = None if a is None else np.mod(a, self.p).astype(np.int64)
        return self._act[key]

    def gram(self, mu: Weight) -> np.ndarray:
        return np.mod(self.lattice.gram[tuple(mu)], self.p).astype(np.int64)

    def pbw_element(self, exponents: Sequence[int]) -> "ModuleElement":
        """The image of ``y_1^(a_1) ... y_N^(a_N) v0``."""
        mu, vec = self.lattice.pbw_vector(tuple(exponents))
        return self.element(mu, vec)

    def highest(self) -> "ModuleElement":
        return self.element(self.lam, [1])


class QuotientModule(_Module):
    """``Delta / S`` with coordinates on the non-pivot columns of the echelon basis of ``S``."""

    def __init__(self, weyl: WeylModule, sub: "Submodule"):
        if sub.module is not weyl:
            raise NotASubmodule("denominator must live in the Weyl module")
        self.weyl = weyl
        self.sub = sub
        self.lam = weyl.lam
        self.p = weyl.p
        self.rs = weyl.rs
        self._free: Dict[Weight, np.ndarray] = {}
        self._act: Dict[Tuple[str, int, int, Weight], Optional[np.ndarray]] = {}

    def __repr__(self) -> str:
        return f"QuotientModule({self.weyl!r} / dim {self.sub.dim()})"

    def free_columns(self, mu: Weight) -> np.ndarray:
        if mu not in self._free:
            d = self.weyl.dim_at(mu)
            ech = self.sub.spaces.get(mu)
            piv = set(ech.pivots) if ech is not None else set()
            self._free[mu] = np.array([c for c in range(d) if c not in piv], dtype=np.int64)
        return self._free[mu]

    def dim_at(self, mu: Weight) -> int:
        mu = tuple(mu)
        return self.weyl.dim_at(mu) - self.sub.dim_at(mu)

    def reduce(self, mu: Weight, v: np.ndarray) -> np.ndarray:
        """Quotient coordinates of a Weyl-module vector."""
        ech = self.sub.spaces.get(mu)
        if ech is not None:
            v = ech.reduce(v)
        return np.mod(np.asarray(v, dtype=np.int64), self.p)[self.free_columns(mu)]

    def lift(self, mu: Weight, q: np.ndarray) -> np.ndarray:
        out = np.zeros(self.weyl.dim_at(mu), dtype=np.int64)
        out[self.free_columns(mu)] = q
        return out

    def action(self, kind, i, m, src):
        key = (kind, i, m, src)
        if key in self._act:
            return self._act[key]
        out = None
        if self.dim_at(src):
            a = self.weyl.action(kind, i, m, src)
            if a is not None:
                sign = 1 if kind == "x" else -1
                tgt = self.weyl.lattice._simple_shift(src, i, sign * m)
                if self.dim_at(tgt):
                    cols = a[:, self.free_columns(src)]
                    ech = self.sub.spaces.get(tgt)
                    if ech is not None and len(ech):
                        cols = np.mod(cols - ech.rows.T @ cols[ech.pivots, :], self.p)
                    out = cols[self.free_columns(tgt), :]
        self._act[key] = out
        return out


AnyModule = Union[WeylModule, QuotientModule]


@dataclass(frozen=True)
class ModuleElement:
    """A weight vector: coordinates in the basis of one weight space."""

    module: AnyModule
    weight: Weight
    coords: np.ndarray = field(compare=False)

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        if other.module is not self.module or other.weight != self.weight:
            raise ValueError("can only add vectors of one weight space")
        return self.module.element(self.weight, self.coords + other.coords)

    def is_zero(self) -> bool:
        return not np.any(self.coords % self.module.p)

    def apply(self, kind: str, i: int, m: int = 1) -> "ModuleElement":
        sign = 1 if kind == "x" else -1
        tgt = self.module.weyl.lattice._simple_shift(self.weight, i, sign * m)
        a = self.module.action(kind, i, m, self.weight)
        if a is None:
            return self.module.element(tgt, np.zeros(self.module.dim_at(tgt), dtype=np.int64))
        return self.module.element(tgt, a @ self.coords)


class Submodule:
    """Per-weight echelon bases of a submodule of ``module``."""

    def __init__(self, module: AnyModule, spaces: Mapping[Weight, Echelon]):
        self.module = module
        self.spaces: Dict[Weight, Echelon] = {w: e for w, e in spaces.items() if len(e)}

    def dim_at(self, mu: Weight) -> int:
        e = self.spaces.get(tuple(mu))
        return len(e) if e is not None else 0

    def dim(self) -> int:
        return sum(len(e) for e in self.spaces.values())

    def character(self) -> Character:
        return Character({w: len(e) for w, e in self.spaces.items()})

    def contains(self, v: ModuleElement) -> bool:
        if v.is_zero():
            return True
        e = self.spaces.get(v.weight)
        return e is not None and e.contains(v.coords)

    def basis(self, mu: Weight) -> np.ndarray:
        e = self.spaces.get(tuple(mu))
        return e.rows.copy() if e is not None else np.zeros((0, self.module.dim_at(mu)), dtype=np.int64)

    def copy_spaces(self) -> Dict[Weight, Echelon]:
        return {w: e.copy() for w, e in self.spaces.items()}

    def __repr__(self) -> str:
        return f"Submodule(dim {self.dim()} of {self.module!r})"


# ---------------------------------------------------------------------------
# closure


class _TooBig(Exception):
    pass


def _close(
    module: AnyModule,
    seeds: Iterable[Tuple[Weight, np.ndarray]],
    base: Optional[Submodule] = None,
    limit: Optional[int] = None,
) -> Submodule:
    """Smallest submodule containing ``base`` and the seed vectors.

    Raises ``_TooBig`` once the dimension exceeds ``limit``.
    """
    p = module.p
    spaces = base.copy_spaces() if base is not None else {}
    total = sum(len(e) for e in spaces.values())
    fresh: Dict[Weight, List[np.ndarray]] = {}
    queue: deque = deque()

    def push(w: Weight, v: np.ndarray) -> None:
        nonlocal total
        e = spaces.get(w)
        if e is None:
            e = spaces[w] = Echelon(module.dim_at(w), p)
        if e.add(v):
            total += 1
            if limit is not None and total > limit:
                raise _TooBig
            if w not in fresh:
                fresh[w] = []
                queue.append(w)
            fresh[w].append(v)

    for w, v in seeds:
        push(tuple(w), np.mod(np.asarray(v, dtype=np.int64), p))
    while queue:
        w = queue.popleft()
        rows = np.array(fresh.pop(w), dtype=np.int64)
        for tgt, a in module.generators(w):
            images = np.mod(rows @ a.T, p)
            for img in images:
                if img.any():
                    push(tgt, img)
    return Submodule(module, spaces)


def submodule_generated(gens: Sequence[ModuleElement], base: Optional[Submodule] = None) -> Submodule:
    """The submodule generated by ``gens`` (plus ``base`` if given)."""
    if base is not None:
        module = base.module
    elif gens:
        module = gens[0].module
    else:
        raise ValueError("need at least one generator or a base submodule")
    if any(g.module is not module for g in gens):
        raise ValueError("generators must live in one module")
    return _close(module, [(g.weight, g.coords) for g in gens if not g.is_zero()], base)


def submodule_sum(a: Submodule, b: Submodule) -> Submodule:
    if a.module is not b.module:
        raise ValueError("submodules of different modules")
    spaces = a.copy_spaces()
    for w, e in b.spaces.items():
        tgt = spaces.setdefault(w, Echelon(a.module.dim_at(w), a.module.p))
        for r in e.rows:
            tgt.add(r)
    return Submodule(a.module, spaces)


def is_submodule(s: Submodule) -> bool:
    m = s.module
    for w, e in s.spaces.items():
        for tgt, a in m.generators(w):
            imgs = np.mod(e.rows @ a.T, m.p)
            te = s.spaces.get(tgt)
            for img in imgs:
                if img.any() and (te is None or not te.contains(img)):
                    return False
    return True


def preimage(q: QuotientModule, s: Submodule) -> Submodule:
    """The submodule of ``q.weyl`` whose image in ``q`` is ``s``."""
    spaces = q.sub.copy_spaces()
    for w, e in s.spaces.items():
        tgt = spaces.setdefault(w, Echelon(q.weyl.dim_at(w), q.p))
        for r in e.rows:
            tgt.add(q.lift(w, r))
    return Submodule(q.weyl, spaces)


def quotient(module: AnyModule, s: Submodule) -> QuotientModule:
    """``module / s``; quotients of quotients are flattened onto the Weyl module."""
    if s.module is not module:
        raise NotASubmodule("submodule belongs to a different module")
    if not is_submodule(s):
        raise NotASubmodule("subspace is not closed under the hyperalgebra")
    if isinstance(module, QuotientModule):
        return QuotientModule(module.weyl, preimage(module, s))
    return QuotientModule(module, s)


# ---------------------------------------------------------------------------
# construction and maximal vectors


@lru_cache(maxsize=64)
def _weyl_cached(lam: Weight, p: int, rs: RootSystem) -> WeylModule:
    return WeylModule(lam, p, rs)


def build_weyl_module(lam: Sequence[int], p: int, rs: RootSystem) -> WeylModule:
    """``Delta(lam)`` over F_p (memoized per ``(lam, p, rs)``)."""
    lam = tuple(lam)
    if not rs.is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    return _weyl_cached(lam, p, rs)


def maximal_space(module: AnyModule, mu: Weight) -> np.ndarray:
    """Basis (rows) of the vectors of weight ``mu`` killed by every ``x_i^(m)``."""
    mu = tuple(mu)
    d = module.dim_at(mu)
    if not d:
        return np.zeros((0, 0), dtype=np.int64)
    blocks = []
    lat = module.weyl.lattice
    for i in range(module.rs.rank):
        for m in range(1, lat.max_power(i, mu, up=True) + 1):
            a = module.action("x", i, m, mu)
            if a is not None:
                blocks.append(a)
    if not blocks:
        return np.identity(d, dtype=np.int64)
    return nullspace_fp(np.vstack(blocks), module.p)


def maximal_vectors(module: AnyModule) -> Dict[Weight, np.ndarray]:
    """Nonzero maximal-vector spaces, keyed by (dominant) weight, highest first."""
    out = {}
    for mu in module.dominant_weights():
        k = maximal_space(module, mu)
        if len(k):
            out[mu] = k
    return out


def hom_dimension(mu: Sequence[int], lam: Sequence[int], p: int, rs: RootSystem) -> int:
    """``dim Hom(Delta(mu), Delta(lam))`` as the maximal-vector space of weight ``mu``."""
    m = build_weyl_module(lam, p, rs)
    return len(maximal_space(m, tuple(mu)))


def is_ambiguous(module: AnyModule) -> bool:
    return any(len(k) >= 2 for k in maximal_vectors(module).values())


# ---------------------------------------------------------------------------
# simple characters and decomposition numbers


class CharacterCache:
    """Map ``(type label, p, lam) -> l(lam)`` shared by all structure computations."""

    def __init__(self, data: Optional[Mapping] = None):
        self._data: Dict[Tuple[str, int, Weight], Character] = dict(data or {})
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key):
        with self._lock:
            hit = self._data.get(key)
            if hit is not None:
                self.hits += 1
            return hit

    def put(self, key, value: Character) -> Character:
        with self._lock:
            return self._data.setdefault(key, value)

    def items(self):
        return sorted(self._data.items())

    def __len__(self) -> int:
        return len(self._data)


_DEFAULT_CACHE = CharacterCache()


def simple_character(
    lam: Sequence[int], p: int, rs: RootSystem, cache: Optional[CharacterCache] = None
) -> Character:
    """``l(lam)``: the character of Delta(lam) modulo the radical of its contravariant form."""
    cache = _DEFAULT_CACHE if cache is None else cache
    lam = tuple(lam)
    key = (rs.label, p, lam)
    hit = cache.get(key)
    if hit is not None:
        return hit
    cache.misses += 1
    log.info("computing simple character l%s for %s, p=%d", lam, rs.label, p)
    lat = integral_module(lam, rs)
    ch = Character({})
    for mu in lat.weights:
        r = rank_fp(lat.gram[mu], p)
        if r:
            ch[mu] = r
    return cache.put(key, ch)


def decompose(
    ch: Mapping[Weight, int], p: int, rs: RootSystem, cache: Optional[CharacterCache] = None
) -> Dict[Weight, int]:
    """Write a module character as a sum of simple characters (triangular elimination)."""
    rem = Character(ch)
    out: Dict[Weight, int] = {}
    while any(rem.values()):
        dom = [w for w, c in rem.items() if c and rs.is_dominant(w)]
        top = max(dom, key=lambda w: (rs.height(w), w))
        if any(dominance_le(top, w, rs) and w != top for w in dom):
            raise AssertionError("elimination order is not compatible with dominance")
        c = rem[top]
        if c < 0:
            raise ValueError(f"character is not a non-negative combination of simples at {top}")
        out[top] = c
        rem = rem - simple_character(top, p, rs, cache).scale(c)
    return out


def decomposition_numbers(
    lam: Sequence[int], p: int, rs: RootSystem, cache: Optional[CharacterCache] = None
) -> Dict[Weight, int]:
    """``d_{lam, mu} = [Delta(lam) : L(mu)]`` for all ``mu`` with a nonzero entry."""
    return decompose(weyl_character(tuple(lam), rs), p, rs, cache)


def simple_character_by_maximal_vectors(lam: Sequence[int], p: int, rs: RootSystem) -> Character:
    """``l(lam)`` by repeatedly factoring out submodules generated by lower maximal vectors."""
    delta = build_weyl_module(lam, p, rs)
    lam = tuple(lam)
    mod: AnyModule = delta
    while True:
        seeds = [
            (w, v) for w, k in maximal_vectors(mod).items() if w != lam for v in k
        ]
        if not seeds:
            return mod.character()
        s = _close(mod, seeds)
        mod = quotient(mod, s)


# ---------------------------------------------------------------------------
# socles


@dataclass
class SocleLayer:
    submodule: Submodule
    # highest weight -> subspace of the maximal-vector space spanned by simple generators
    isotypic: Dict[Weight, np.ndarray]

    def weights(self) -> List[Weight]:
        out = []
        for w, rows in self.isotypic.items():
            out += [w] * len(rows)
        return _layer_sort(out, self.submodule.module.rs)


@dataclass(frozen=True)
class SocleSeries:
    layers: Tuple[Tuple[Weight, ...], ...]

    def __len__(self) -> int:
        return len(self.layers)

    def as_lists(self) -> List[List[Weight]]:
        return [list(layer) for layer in self.layers]

    def multisets(self) -> List[Counter]:
        return [Counter(layer) for layer in self.layers]


def projective_points(basis: np.ndarray, p: int) -> Iterator[np.ndarray]:
    """One representative per line in the row span of ``basis``."""
    k = len(basis)
    count = (p**k - 1) // (p - 1)
    if count > ENUMERATION_CAP:
        raise EnumerationTooLarge(f"{count} projective points exceed the cap of {ENUMERATION_CAP}")
    for lead in range(k):
        for tail in product(range(p), repeat=k - lead - 1):
            coef = np.zeros(k, dtype=np.int64)
            coef[lead] = 1
            coef[lead + 1:] = tail
            yield np.mod(coef @ basis, p)


def _generates_simple(module: AnyModule, mu: Weight, v: np.ndarray, target_dim: int) -> bool:
    try:
        s = _close(module, [(mu, v)], limit=target_dim)
    except _TooBig:
        return False
    return s.dim() == target_dim


def socle(module: AnyModule, cache: Optional[CharacterCache] = None) -> SocleLayer:
    """The socle: the sum of all simple submodules, found through their generating maximal vectors."""
    p, rs = module.p, module.rs
    seeds = []
    isotypic: Dict[Weight, np.ndarray] = {}
    for mu, k in maximal_vectors(module).items():
        target = simple_character(mu, p, rs, cache).dim
        good = Echelon(module.dim_at(mu), p)
        for v in projective_points(k, p):
            if good.contains(v):
                continue
            if _generates_simple(module, mu, v, target):
                good.add(v)
        if len(good):
            isotypic[mu] = good.rows.copy()
            seeds += [(mu, r) for r in good.rows]
    return SocleLayer(_close(module, seeds), isotypic)


def socle_series(module: AnyModule, cache: Optional[CharacterCache] = None) -> SocleSeries:
    layers: List[Tuple[Weight, ...]] = []
    weyl = module.weyl
    base = module.sub if isinstance(module, QuotientModule) else weyl.zero()
    total = weyl.dim()
    while base.dim() < total:
        q = QuotientModule(weyl, base)
        layer = socle(q, cache)
        if not layer.submodule.dim():
            raise AssertionError("nonzero module with zero socle")
        layers.append(tuple(layer.weights()))
        base = preimage(q, layer.submodule)
    return SocleSeries(tuple(layers))


def nabla_radical_layers(
    lam: Sequence[int], p: int, rs: RootSystem, cache: Optional[CharacterCache] = None
) -> List[List[Weight]]:
    """Radical layers of the dual Weyl module, listed bottom-up like a socle table.

    The radical series of the dual Weyl module is the socle series of
    Delta(lam) turned upside down, so the last entry is the head of the
    dual module (the socle of Delta(lam)) and the first is L(lam).
    """
    series = socle_series(build_weyl_module(lam, p, rs), cache)
    return [list(layer) for layer in reversed(series.layers)]


# ---------------------------------------------------------------------------
# extensions


@dataclass
class Ext1Witness:
    """``Delta(lam)/submodule`` has exactly the composition factors L(lam), L(mu)."""

    lam: Weight
    mu: Weight
    submodule: Submodule
    quotient_character: Character
    steps: int

    def report(self) -> str:
        return (
            f"Delta{self.lam}/S has composition factors L{self.lam}, L{self.mu}; "
            f"dim S = {self.submodule.dim()}, search steps = {self.steps}"
        )


def ext1_witness(
    lam: Sequence[int],
    mu: Sequence[int],
    p: int,
    rs: RootSystem,
    cache: Optional[CharacterCache] = None,
) -> Optional[Ext1Witness]:
    """Search for a submodule S with ``Delta(lam)/S`` of length two with factors L(lam), L(mu).

    Such a quotient has simple head L(lam) and socle L(mu), so it is a
    non-split extension.  The search walks down socles: simple summands
    of the socle other than L(mu) must lie in S; when the socle is
    ``L(mu)^k`` either all of it lies in S or S meets it in a
    hyperplane's worth, and both branches are explored.
    """
    lam, mu = tuple(lam), tuple(mu)
    if lam == mu or not dominance_le(mu, lam, rs):
        return None
    delta = build_weyl_module(lam, p, rs)
    steps = 0
    want = {lam: 1, mu: 1}

    def search(base: Submodule) -> Optional[Submodule]:
        nonlocal steps
        steps += 1
        q = QuotientModule(delta, base)
        comp = decompose(q.character(), p, rs, cache)
        if comp == want:
            return base
        if mu not in comp:
            return None
        layer = socle(q, cache)
        others = {w: r for w, r in layer.isotypic.items() if w != mu}
        if others:
            seeds = [(w, v) for w, rows in others.items() for v in rows]
            return search(preimage(q, _close(q, seeds)))
        rows = layer.isotypic[mu]
        whole = preimage(q, layer.submodule)
        if len(rows) == 1:
            return search(whole)
        for normal in projective_points(np.identity(len(rows), dtype=np.int64), p):
            hyper = nullspace_fp(normal.reshape(1, -1), p) @ rows % p
            found = search(preimage(q, _close(q, [(mu, v) for v in hyper])))
            if found is not None:
                return found
        return search(whole)

    found = search(delta.zero())
    if found is None:
        return None
    return Ext1Witness(lam, mu, found, QuotientModule(delta, found).character(), steps)
