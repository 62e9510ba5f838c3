"""The minimal admissible lattice ``V(lam)_Z = U_Z v0`` with exact integer actions.

Weight spaces are processed from the top down.  A vector ``v`` of weight
``mu != lam`` in the simple module is determined by its images ``e_j v``
under the simple raising operators, so each weight space is embedded in
the direct sum of the (already built) spaces ``L_{mu + alpha_j}``.  The
lattice at ``mu`` is the Z-span of ``f_i^(m) L_{mu + m alpha_i}`` over all
simple ``i`` and ``m >= 1``, computed in that embedding and put in column
Hermite normal form; its columns become the lattice basis.  Every action
matrix is then an integer matrix in lattice coordinates.
"""

from __future__ import annotations

import logging
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .linalg import NotInLattice, hnf_columns, hnf_pivots, solve_hnf
from .roots import RootSystem, Weight, difference_coords, weyl_character

log = logging.getLogger(__name__)


class LatticeIntegralityViolation(AssertionError):
    """An action that must preserve the Z-form produced a non-integral result."""


def _zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=object)


def _exact_div(a: np.ndarray, k: int, what: str) -> np.ndarray:
    if k == 1:
        return a
    if a.size and any(x % k for x in a.flat):
        raise LatticeIntegralityViolation(f"{what} is not divisible by {k}")
    return a // k


def _shift(mu: Weight, root: Sequence[int], k: int) -> Weight:
    return tuple(a + k * b for a, b in zip(mu, root))


class IntegralModule:
    """``V(lam)_Z`` with lattice bases per weight space.

    Attributes
    ----------
    weights : weights of ``chi(lam)``, highest first
    dims : weight -> rank of the lattice at that weight
    gram : weight -> integer Gram matrix of the contravariant form
    """

    def __init__(self, lam: Sequence[int], rs: RootSystem):
        self.rs = rs
        self.lam: Weight = tuple(lam)
        if not rs.is_dominant(self.lam):
            raise ValueError(f"{self.lam} is not dominant")
        self.character = weyl_character(self.lam, rs)
        self.weights: List[Weight] = sorted(
            self.character, key=lambda w: (sum(difference_coords(w, self.lam, rs)), w)
        )
        self.dims: Dict[Weight, int] = dict(self.character)
        self._e: Dict[Tuple[int, int, Weight], np.ndarray] = {}
        self._f: Dict[Tuple[int, int, Weight], np.ndarray] = {}
        self._root: Dict[Tuple[str, int, Weight], np.ndarray] = {}
        self.gram: Dict[Weight, np.ndarray] = {}
        self._build()

    # -- construction ------------------------------------------------------

    def _simple_shift(self, mu: Weight, i: int, k: int) -> Weight:
        return _shift(mu, self.rs.simple_root(i), k)

    def max_power(self, i: int, mu: Weight, up: bool) -> int:
        """Largest ``m`` with ``mu +/- m alpha_i`` a weight of the module."""
        m = 0
        while self._simple_shift(mu, i, (m + 1) if up else -(m + 1)) in self.dims:
            m += 1
        return m

    def _build(self) -> None:
        rs = self.rs
        lam = self.lam
        self.gram[lam] = np.array([[1]], dtype=object)
        for mu in self.weights[1:]:
            self._build_weight(mu)
        log.debug("built V%s_Z over %s: dim %d", lam, rs.label, sum(self.dims.values()))

    def _signature_blocks(self, mu: Weight) -> List[Tuple[int, int]]:
        """(j, dim of mu + alpha_j) for the raising directions that stay inside the module."""
        out = []
        for j in range(self.rs.rank):
            up = self._simple_shift(mu, j, 1)
            if up in self.dims:
                out.append((j, self.dims[up]))
        return out

    def _candidate_signatures(self, mu: Weight, i: int, m: int, blocks) -> np.ndarray:
        """Signatures of ``f_i^(m) u`` for the basis vectors ``u`` of ``L_{mu + m alpha_i}``.

        Uses ``e_j f_i^(m) = f_i^(m) e_j`` for ``j != i`` and
        ``e_i f_i^(m) = f_i^(m) e_i + f_i^(m-1) (h_i - m + 1)``.
        """
        nu = self._simple_shift(mu, i, m)
        dn = self.dims[nu]
        parts = []
        for j, dj in blocks:
            up = self._simple_shift(nu, j, 1)
            if up in self.dims:
                block = self._f[(i, m, up)].dot(self._e[(j, 1, nu)])
            else:
                block = _zeros(dj, dn)
            if j == i:
                c = nu[i] - m + 1
                if c:
                    if m == 1:
                        prev = np.identity(dn, dtype=object)
                    else:
                        prev = self._f[(i, m - 1, nu)]
                    block = block + c * prev
            parts.append(block)
        return np.vstack(parts) if parts else _zeros(0, dn)

    def _build_weight(self, mu: Weight) -> None:
        rs = self.rs
        d = self.dims[mu]
        blocks = self._signature_blocks(mu)
        sig_dim = sum(b for _, b in blocks)
        families = []
        for m in range(1, 64):
            any_i = False
            for i in range(rs.rank):
                if self._simple_shift(mu, i, m) in self.dims:
                    families.append((i, m, self._candidate_signatures(mu, i, m, blocks)))
                    any_i = True
            if not any_i:
                break

        gens: List[Tuple[int, int, int]] = []
        gen_cols: List[List[int]] = []
        h: List[List[int]] = [[] for _ in range(sig_dim)]
        piv: List[int] = []
        for i, m, sig in families:
            for k in range(sig.shape[1]):
                col = [int(x) for x in sig[:, k]]
                if not any(col):
                    continue
                if piv:
                    try:
                        solve_hnf(h, piv, col)
                        continue
                    except NotInLattice:
                        pass
                gens.append((i, m, k))
                gen_cols.append(col)
                h, t = hnf_columns([list(r) for r in zip(*gen_cols)])
                piv = hnf_pivots(h)
        if len(piv) != d:
            raise LatticeIntegralityViolation(
                f"weight {mu}: lattice rank {len(piv)} differs from multiplicity {d}"
            )
        hmat = np.array(h, dtype=object).reshape(sig_dim, d)

        # raising operators: blocks of the basis signatures
        row = 0
        for j, dj in blocks:
            self._e[(j, 1, mu)] = hmat[row:row + dj, :]
            row += dj
        # lowering operators into mu: coordinates of every candidate
        for i, m, sig in families:
            nu = self._simple_shift(mu, i, m)
            cols = []
            for k in range(sig.shape[1]):
                try:
                    cols.append(solve_hnf(h, piv, [int(x) for x in sig[:, k]]))
                except NotInLattice as exc:  # pragma: no cover - would be a bug
                    raise LatticeIntegralityViolation(str(exc)) from exc
            self._f[(i, m, nu)] = np.array(cols, dtype=object).reshape(sig.shape[1], d).T
        # divided raising powers out of mu
        for i in range(rs.rank):
            acc = None
            cur = mu
            for m in range(1, self.max_power(i, mu, up=True) + 1):
                step = self._e[(i, 1, cur)]
                acc = step if acc is None else step.dot(acc)
                cur = self._simple_shift(cur, i, 1)
                if m > 1:
                    self._e[(i, m, mu)] = _exact_div(acc, factorial(m), f"e_{i}^({m}) at {mu}")
        # contravariant form: <f_i^(m) u, w> = <u, e_i^(m) w>
        t_mat = np.array(t, dtype=object).reshape(len(gens), d)
        rows = []
        for i, m, k in gens:
            nu = self._simple_shift(mu, i, m)
            rows.append(self.gram[nu][k, :].dot(self._e[(i, m, mu)]))
        g = t_mat.T.dot(np.array(rows, dtype=object).reshape(len(gens), d))
        if not (g == g.T).all():
            raise LatticeIntegralityViolation(f"Gram matrix at {mu} is not symmetric")
        self.gram[mu] = g

    # -- queries -------------------------------------------------------------

    def dim(self) -> int:
        return sum(self.dims.values())

    def simple_action(self, kind: str, i: int, m: int, src: Weight) -> Optional[np.ndarray]:
        """Integer matrix of ``x_i^(m)`` (kind 'x') or ``y_i^(m)`` (kind 'y') out of ``src``.

        None when the target weight is not a weight of the module.
        """
        if m == 0:
            return np.identity(self.dims[src], dtype=object)
        table = self._e if kind == "x" else self._f
        tgt = self._simple_shift(src, i, m if kind == "x" else -m)
        if tgt not in self.dims or src not in self.dims:
            return None
        return table[(i, m, src)]

    def root_action(self, kind: str, root: int, src: Weight) -> np.ndarray:
        """Matrix of ``x_root`` / ``y_root`` (first power) out of ``src``; zero matrix if target absent.

        Non-simple root vectors are ``x_g = [x_i, x_b]/(r+1)`` and
        ``y_g = [y_b, y_i]/(r+1)`` for the decomposition in ``rs.extraspecial``.
        """
        rs = self.rs
        key = (kind, root, src)
        if key in self._root:
            return self._root[key]
        a = rs.positive_roots[root]
        sign = 1 if kind == "x" else -1
        tgt = _shift(src, a.weight, sign)
        if src not in self.dims:
            raise KeyError(src)
        if tgt not in self.dims:
            out = _zeros(0, self.dims[src])
        elif a.is_simple:
            i = a.coords.index(1)
            out = self._e[(i, 1, src)] if kind == "x" else self._f[(i, 1, src)]
        else:
            i, b, r = rs.extraspecial[root]
            si = rs.simple_index[i]
            first = self._compose(kind, [b, si], src)
            second = self._compose(kind, [si, b], src)
            # x: x_i x_b - x_b x_i ; y: y_b y_i - y_i y_b
            diff = (first - second) if kind == "x" else (second - first)
            out = _exact_div(diff, r + 1, f"{kind}_{root + 1} at {src}")
        self._root[key] = out
        return out

    def _compose(self, kind: str, roots: Sequence[int], src: Weight) -> np.ndarray:
        """Product ``g_{roots[0]} ... g_{roots[-1]}`` applied to ``src`` (rightmost first)."""
        rs = self.rs
        sign = 1 if kind == "x" else -1
        tgt = src
        for r in roots:
            tgt = _shift(tgt, rs.positive_roots[r].weight, sign)
        if tgt not in self.dims:
            return _zeros(0, self.dims[src])
        cur = src
        acc = np.identity(self.dims[src], dtype=object)
        for r in reversed(roots):
            nxt = _shift(cur, rs.positive_roots[r].weight, sign)
            if nxt not in self.dims:
                return _zeros(self.dims[tgt], self.dims[src])
            acc = self.root_action(kind, r, cur).dot(acc)
            cur = nxt
        return acc

    def divided_root_power(self, kind: str, root: int, m: int, src: Weight) -> np.ndarray:
        rs = self.rs
        sign = 1 if kind == "x" else -1
        acc = np.identity(self.dims[src], dtype=object)
        cur = src
        for _ in range(m):
            nxt = _shift(cur, rs.positive_roots[root].weight, sign)
            if nxt not in self.dims:
                return _zeros(0, self.dims[src])
            acc = self.root_action(kind, root, cur).dot(acc)
            cur = nxt
        return _exact_div(acc, factorial(m), f"{kind}_{root + 1}^({m}) at {src}")

    def pbw_vector(self, exponents: Sequence[int]) -> Tuple[Weight, np.ndarray]:
        """Lattice coordinates of ``y_1^(a_1) ... y_N^(a_N) v0`` (zero vector if the weight is absent)."""
        rs = self.rs
        cur = self.lam
        vec = np.array([1], dtype=object)
        for root in reversed(range(len(exponents))):
            a = exponents[root]
            if not a:
                continue
            tgt = _shift(cur, rs.positive_roots[root].weight, -a)
            if tgt not in self.dims:
                wt = tgt
                for r2 in reversed(range(root)):
                    wt = _shift(wt, rs.positive_roots[r2].weight, -exponents[r2])
                return wt, np.zeros(self.dims.get(wt, 0), dtype=object)
            vec = self.divided_root_power("y", root, a, cur).dot(vec)
            cur = tgt
        return cur, vec
