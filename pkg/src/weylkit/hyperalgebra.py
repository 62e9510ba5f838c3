"""Chevalley structure constants and divided-power straightening on Verma modules.

Root vectors are indexed by *signed roots*: ``(+1, k)`` is ``x_k`` and
``(-1, k)`` is ``y_k`` for the k-th positive root (0-based).  Verma module
elements are sparse maps from PBW exponent vectors to rational coefficients
on the divided-power monomials ``y_1^(a_1) ... y_N^(a_N) v0``.

Internally all straightening is done with ordinary powers (integer
arithmetic, memoized) and converted to divided powers at the boundary.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .lattice import IntegralModule, LatticeIntegralityViolation
from .roots import RootSystem, Weight, difference_coords

SignedRoot = Tuple[int, int]
Exponents = Tuple[int, ...]


class WeightNotInModule(ValueError):
    """The requested weight is not a weight of the Verma module."""


# ---------------------------------------------------------------------------
# structure constants


@dataclass(frozen=True)
class ChevalleyConstants:
    """Structure constants ``[e_a, e_b] = N[a, b] e_{a+b}`` of a Chevalley basis.

    Signs come from the extraspecial convention used to define the
    non-simple root vectors (see :mod:`weylkit.lattice`).
    """

    rs: RootSystem
    n: Mapping[Tuple[SignedRoot, SignedRoot], int]
    # signed root -> signed root for a + b, when it is a root
    sums: Mapping[Tuple[SignedRoot, SignedRoot], SignedRoot] = field(repr=False)

    def N(self, a: SignedRoot, b: SignedRoot) -> int:
        return self.n.get((a, b), 0)

    def sum_root(self, a: SignedRoot, b: SignedRoot) -> Optional[SignedRoot]:
        return self.sums.get((a, b))

    def cartan_integer(self, beta: SignedRoot, alpha: int) -> int:
        """``<beta, alpha_check>`` for a signed root ``beta`` and positive root ``alpha``."""
        s, k = beta
        return s * self.rs.pairing(self.rs.positive_roots[k].weight, alpha)

    def signed_roots(self) -> List[SignedRoot]:
        n = len(self.rs.positive_roots)
        return [(1, k) for k in range(n)] + [(-1, k) for k in range(n)]


def _signed_weight(rs: RootSystem, a: SignedRoot) -> Weight:
    s, k = a
    return tuple(s * c for c in rs.positive_roots[k].weight)


def _add(u: Sequence[int], v: Sequence[int]) -> Weight:
    return tuple(x + y for x, y in zip(u, v))


def _act(mod: IntegralModule, a: SignedRoot, src: Weight) -> Optional[np.ndarray]:
    """Matrix of root vector ``a`` out of ``src`` (None when the target is not a weight)."""
    tgt = _add(src, _signed_weight(mod.rs, a))
    if tgt not in mod.dims:
        return None
    return mod.root_action("x" if a[0] > 0 else "y", a[1], src)


def _commutator_block(mod: IntegralModule, a: SignedRoot, b: SignedRoot, src: Weight) -> np.ndarray:
    rs = mod.rs
    tgt = _add(_add(src, _signed_weight(rs, a)), _signed_weight(rs, b))
    out = np.zeros((mod.dims[tgt], mod.dims[src]), dtype=object)
    for first, second, sign in ((b, a, 1), (a, b, -1)):
        mid = _add(src, _signed_weight(rs, first))
        m1 = _act(mod, first, src)
        if m1 is None:
            continue
        m2 = _act(mod, second, mid)
        out = out + sign * m2.dot(m1)
    return out


@lru_cache(maxsize=None)
def chevalley_constants(rs: RootSystem) -> ChevalleyConstants:
    """Structure constants read off from commutators in the adjoint lattice model."""
    highest = max(rs.positive_roots, key=lambda r: r.height)
    adj = IntegralModule(highest.weight, rs)
    weight_to_signed: Dict[Weight, SignedRoot] = {}
    for k, r in enumerate(rs.positive_roots):
        weight_to_signed[r.weight] = (1, k)
        weight_to_signed[tuple(-c for c in r.weight)] = (-1, k)
    signed = list(weight_to_signed.values())
    n: Dict[Tuple[SignedRoot, SignedRoot], int] = {}
    sums: Dict[Tuple[SignedRoot, SignedRoot], SignedRoot] = {}
    for a in signed:
        for b in signed:
            s = weight_to_signed.get(_add(_signed_weight(rs, a), _signed_weight(rs, b)))
            if s is None:
                continue
            sums[(a, b)] = s
            value = None
            for src in adj.weights:
                tgt_ok = _add(src, _signed_weight(rs, s)) in adj.dims
                if not tgt_ok:
                    continue
                lhs = _commutator_block(adj, a, b, src)
                rhs = _act(adj, s, src)
                for x, y in zip(lhs.flat, rhs.flat):
                    if y == 0:
                        if x != 0:
                            raise LatticeIntegralityViolation(f"[{a},{b}] is not a multiple of {s}")
                        continue
                    q, r = divmod(x, y)
                    if r or (value is not None and q != value):
                        raise LatticeIntegralityViolation(f"inconsistent constant for [{a},{b}]")
                    value = q
            if not value:
                raise LatticeIntegralityViolation(f"could not determine N for [{a},{b}]")
            n[(a, b)] = value
    return ChevalleyConstants(rs=rs, n=n, sums=sums)


# ---------------------------------------------------------------------------
# PBW monomials and Verma elements


@dataclass(frozen=True, order=True)
class PbwMonomial:
    """Divided-power monomial ``y_1^(a_1) ... y_N^(a_N)`` in the fixed root order."""

    exponents: Exponents

    def __post_init__(self):
        if any(a < 0 for a in self.exponents):
            raise ValueError("exponents must be non-negative")

    def weight_drop(self, rs: RootSystem) -> Weight:
        out = [0] * rs.rank
        for a, r in zip(self.exponents, rs.positive_roots):
            for t in range(rs.rank):
                out[t] += a * r.weight[t]
        return tuple(out)

    def factorial_weight(self) -> int:
        return prod(factorial(a) for a in self.exponents)

    def label(self) -> str:
        parts = []
        for k, a in enumerate(self.exponents):
            if a == 1:
                parts.append(f"y{k + 1}")
            elif a > 1:
                parts.append(f"y{k + 1}^({a})")
        return "".join(parts) + "v0"


@dataclass(frozen=True)
class GeneratorSymbol:
    """``x_root^(m)`` (kind 'x') or ``y_root^(m)`` (kind 'y'), root 0-based."""

    kind: str
    root: int
    m: int = 1

    def __post_init__(self):
        if self.kind not in ("x", "y"):
            raise ValueError(f"kind must be 'x' or 'y', got {self.kind!r}")
        if self.m < 1:
            raise ValueError("divided power must be >= 1")


@dataclass(frozen=True)
class VermaElement:
    """Sparse rational combination of divided-power monomials applied to v0."""

    lam: Weight
    terms: Mapping[Exponents, Fraction]

    @staticmethod
    def make(lam: Sequence[int], terms: Mapping[Exponents, object]) -> "VermaElement":
        clean = {tuple(k): Fraction(v) for k, v in terms.items() if v}
        return VermaElement(tuple(lam), clean)

    @staticmethod
    def highest(lam: Sequence[int], n_roots: int) -> "VermaElement":
        return VermaElement.make(lam, {(0,) * n_roots: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def weights(self, rs: RootSystem) -> set:
        return {
            tuple(l - d for l, d in zip(self.lam, PbwMonomial(e).weight_drop(rs))) for e in self.terms
        }

    def __add__(self, other: "VermaElement") -> "VermaElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return VermaElement.make(self.lam, out)

    def scale(self, c) -> "VermaElement":
        return VermaElement.make(self.lam, {k: v * c for k, v in self.terms.items()})


class _Straightener:
    """Memoized ordered-monomial arithmetic in ``M(lam)`` with ordinary powers."""

    def __init__(self, lam: Weight, cc: ChevalleyConstants):
        self.lam = lam
        self.cc = cc
        self.rs = cc.rs
        self.n = len(self.rs.positive_roots)
        self._ins: Dict[Tuple[int, Exponents], Dict[Exponents, int]] = {}
        self._x: Dict[Tuple[int, Exponents], Dict[Exponents, int]] = {}
        self._lock = threading.Lock()

    def _weight(self, e: Exponents) -> Weight:
        return tuple(l - d for l, d in zip(self.lam, PbwMonomial(e).weight_drop(self.rs)))

    def insert(self, k: int, e: Exponents) -> Dict[Exponents, int]:
        """``y_k * y^e v0`` as ordered ordinary monomials."""
        key = (k, e)
        hit = self._ins.get(key)
        if hit is not None:
            return hit
        j = next((t for t, a in enumerate(e) if a), None)
        if j is None or k <= j:
            new = list(e)
            new[k] += 1
            out = {tuple(new): 1}
        else:
            rest = list(e)
            rest[j] -= 1
            rest_t = tuple(rest)
            out: Dict[Exponents, int] = {}
            for mono, c in self.insert(k, rest_t).items():
                m2 = list(mono)
                m2[j] += 1
                m2t = tuple(m2)
                out[m2t] = out.get(m2t, 0) + c
            s = self.cc.sum_root((-1, k), (-1, j))
            if s is not None:
                nk = self.cc.N((-1, k), (-1, j))
                for mono, c in self.insert(s[1], rest_t).items():
                    out[mono] = out.get(mono, 0) + nk * c
            out = {m: c for m, c in out.items() if c}
        with self._lock:
            self._ins.setdefault(key, out)
        return out

    def insert_elem(self, k: int, v: Dict[Exponents, int]) -> Dict[Exponents, int]:
        out: Dict[Exponents, int] = {}
        for e, c in v.items():
            for m, d in self.insert(k, e).items():
                out[m] = out.get(m, 0) + c * d
        return {m: c for m, c in out.items() if c}

    def raise_(self, a: int, e: Exponents) -> Dict[Exponents, int]:
        """``x_a * y^e v0`` as ordered ordinary monomials."""
        key = (a, e)
        hit = self._x.get(key)
        if hit is not None:
            return hit
        j = next((t for t, c in enumerate(e) if c), None)
        if j is None:
            out: Dict[Exponents, int] = {}
        else:
            rest = list(e)
            rest[j] -= 1
            rest_t = tuple(rest)
            out = self.insert_elem(j, self.raise_(a, rest_t))
            if a == j:
                h = self.rs.pairing(self._weight(rest_t), a)
                if h:
                    out = dict(out)
                    out[rest_t] = out.get(rest_t, 0) + h
            else:
                s = self.cc.sum_root((1, a), (-1, j))
                if s is not None:
                    c = self.cc.N((1, a), (-1, j))
                    extra = self.raise_(s[1], rest_t) if s[0] > 0 else self.insert(s[1], rest_t)
                    out = dict(out)
                    for m, d in extra.items():
                        out[m] = out.get(m, 0) + c * d
            out = {m: c for m, c in out.items() if c}
        with self._lock:
            self._x.setdefault(key, out)
        return out

    def raise_elem(self, a: int, v: Dict[Exponents, int]) -> Dict[Exponents, int]:
        out: Dict[Exponents, int] = {}
        for e, c in v.items():
            for m, d in self.raise_(a, e).items():
                out[m] = out.get(m, 0) + c * d
        return {m: c for m, c in out.items() if c}


_STRAIGHTENERS: Dict[Tuple[str, Weight], _Straightener] = {}
_STRAIGHTENERS_LOCK = threading.Lock()


def _straightener(lam: Weight, cc: ChevalleyConstants) -> _Straightener:
    key = (cc.rs.label, tuple(lam))
    with _STRAIGHTENERS_LOCK:
        s = _STRAIGHTENERS.get(key)
        if s is None or s.cc is not cc:
            s = _Straightener(tuple(lam), cc)
            _STRAIGHTENERS[key] = s
    return s


def _to_ordinary(v: VermaElement) -> Tuple[Dict[Exponents, Fraction], int]:
    """Return ``(terms, denom)`` with ``v = (1/denom) * sum terms[e] y^e v0`` and integer terms."""
    fr = {e: c / PbwMonomial(e).factorial_weight() for e, c in v.terms.items()}
    denom = 1
    for c in fr.values():
        denom = denom * c.denominator // np.gcd(denom, c.denominator)
    return {e: int(c * denom) for e, c in fr.items()}, denom


def _from_ordinary(lam: Weight, terms: Mapping[Exponents, int], scale: Fraction) -> VermaElement:
    return VermaElement.make(
        lam, {e: scale * c * PbwMonomial(e).factorial_weight() for e, c in terms.items()}
    )


def apply_generator(g: GeneratorSymbol, v: VermaElement, cc: ChevalleyConstants) -> VermaElement:
    """Act by ``x_root^(m)`` or ``y_root^(m)`` on a Verma element and straighten."""
    st = _straightener(v.lam, cc)
    terms, denom = _to_ordinary(v)
    step = st.raise_elem if g.kind == "x" else st.insert_elem
    for _ in range(g.m):
        terms = step(g.root, terms)
    out = _from_ordinary(v.lam, terms, Fraction(1, denom * factorial(g.m)))
    if v.is_integral() and not out.is_integral():
        raise LatticeIntegralityViolation(f"{g} does not preserve the integral form on {v}")
    return out


# ---------------------------------------------------------------------------
# Verma weight spaces and the contravariant form


def kostant_partitions(diff: Sequence[int], rs: RootSystem) -> List[Exponents]:
    """Exponent vectors ``a`` with ``sum a_k root_k = diff`` (simple-root coordinates)."""
    roots = [r.coords for r in rs.positive_roots]
    n = len(roots)
    out: List[Exponents] = []

    def rec(k: int, rem: Tuple[int, ...], acc: List[int]):
        if k == n:
            if not any(rem):
                out.append(tuple(acc))
            return
        c = roots[k]
        bound = min((rem[t] // c[t] for t in range(len(c)) if c[t]), default=0)
        for a in range(bound + 1):
            rec(k + 1, tuple(r - a * x for r, x in zip(rem, c)), acc + [a])

    if any(d < 0 for d in diff):
        return []
    rec(0, tuple(diff), [])
    return sorted(out)


def verma_basis(lam: Sequence[int], mu: Sequence[int], rs: RootSystem) -> List[Exponents]:
    diff = difference_coords(tuple(mu), tuple(lam), rs)
    if any(d < 0 or d.denominator != 1 for d in diff):
        raise WeightNotInModule(f"{tuple(mu)} is not a weight of M{tuple(lam)}")
    return kostant_partitions([int(d) for d in diff], rs)


def contravariant_pairing(lam: Weight, a: Exponents, b: Exponents, cc: ChevalleyConstants) -> Fraction:
    """``<y^(a) v0, y^(b) v0>``: coefficient of v0 in ``x_N^(a_N) ... x_1^(a_1) y^(b) v0``."""
    st = _straightener(tuple(lam), cc)
    terms: Dict[Exponents, int] = {tuple(b): 1}
    for k, ak in enumerate(a):
        for _ in range(ak):
            terms = st.raise_elem(k, terms)
            if not terms:
                return Fraction(0)
    top = terms.get((0,) * len(a), 0)
    return Fraction(top, PbwMonomial(tuple(a)).factorial_weight() * PbwMonomial(tuple(b)).factorial_weight())


def contravariant_gram(lam: Sequence[int], mu: Sequence[int], rs: RootSystem, cc: ChevalleyConstants) -> List[List[int]]:
    """Gram matrix of the contravariant form on the PBW basis of ``M(lam)_mu``."""
    lam = tuple(lam)
    basis = verma_basis(lam, mu, rs)
    g: List[List[int]] = [[0] * len(basis) for _ in basis]
    for i, a in enumerate(basis):
        for j in range(i, len(basis)):
            v = contravariant_pairing(lam, a, basis[j], cc)
            if v.denominator != 1:
                raise LatticeIntegralityViolation(f"non-integral form value at {a}, {basis[j]}")
            g[i][j] = g[j][i] = int(v)
    return g
