"""Exact linear algebra over Z, Q and prime fields.

Integer matrices are plain lists of rows of Python ints, so entries never
overflow.  Matrices over F_p are numpy ``int64`` arrays with entries reduced
into ``[0, p)``; every routine here takes the modulus explicitly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

IntMatrix = List[List[int]]


class NotInLattice(ValueError):
    """Raised when a target vector is not an integral combination of a basis."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# prime fields


def as_fp(m, p: int) -> np.ndarray:
    """Copy ``m`` into a 2-d int64 array reduced mod ``p``."""
    a = np.array(m, dtype=object)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.dtype == object:
        return np.mod(a, p).astype(np.int64)
    return np.mod(a.astype(np.int64), p)


def rref_fp(m, p: int) -> Tuple[np.ndarray, List[int], int]:
    """Reduced row echelon form over F_p.

    Returns ``(r, pivots, rank)`` where ``r`` has the same shape as ``m`` and
    the zero rows at the bottom.
    """
    a = as_fp(m, p)
    rows, cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        if col.any():
            a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots, r


def rank_fp(m, p: int) -> int:
    a = as_fp(m, p)
    if a.size == 0:
        return 0
    return rref_fp(a, p)[2]


def nullspace_fp(m, p: int) -> np.ndarray:
    """Basis of ``{v : m v = 0}`` over F_p, one vector per row."""
    a = as_fp(m, p)
    cols = a.shape[1]
    r, pivots, rank = rref_fp(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, f]) % p
    return basis


class Echelon:
    """Incrementally maintained reduced row echelon basis of a subspace of F_p^n.

    Used for submodule closure: ``add`` reports whether a vector was new.
    """

    def __init__(self, n: int, p: int):
        self.n = n
        self.p = p
        self.rows = np.zeros((0, n), dtype=np.int64)
        self.pivots: List[int] = []

    def __len__(self) -> int:
        return len(self.pivots)

    def copy(self) -> "Echelon":
        e = Echelon(self.n, self.p)
        e.rows = self.rows.copy()
        e.pivots = list(self.pivots)
        return e

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = np.mod(np.asarray(v, dtype=np.int64), self.p)
        if self.pivots:
            coef = v[self.pivots]
            if coef.any():
                v = (v - coef @ self.rows) % self.p
        return v

    def contains(self, v: np.ndarray) -> bool:
        return not self.reduce(v).any()

    def add(self, v: np.ndarray) -> bool:
        w = self.reduce(v)
        nz = np.nonzero(w)[0]
        if nz.size == 0:
            return False
        c = int(nz[0])
        w = (w * pow(int(w[c]), -1, self.p)) % self.p
        if self.pivots:
            col = self.rows[:, c].copy()
            if col.any():
                self.rows = (self.rows - np.outer(col, w)) % self.p
        pos = int(np.searchsorted(self.pivots, c))
        self.rows = np.insert(self.rows, pos, w, axis=0)
        self.pivots.insert(pos, c)
        return True


# ---------------------------------------------------------------------------
# integers and rationals


def _transpose(m: Sequence[Sequence[int]]) -> IntMatrix:
    return [list(r) for r in zip(*m)] if m else []


def hnf_columns(m: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix]:
    """Column Hermite normal form of an integer matrix.

    Returns ``(h, t)`` with ``h = m @ t``.  The ``r`` columns of ``h`` are a
    Z-basis of the column lattice of ``m``; column ``k`` has its pivot in row
    ``piv[k]`` with ``piv`` strictly increasing, zeros above the pivot, a
    positive pivot, and the entries left of the pivot in that row reduced
    into ``[0, pivot)``.  ``t`` has shape ``cols x r``.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    # row-style HNF of the transpose, tracking the row operations
    b = _transpose(m) if rows else [[] for _ in range(cols)]
    u = [[int(i == j) for j in range(cols)] for i in range(cols)]
    r = 0
    for c in range(rows):
        if r == cols:
            break
        nz = [i for i in range(r, cols) if b[i][c] != 0]
        if not nz:
            continue
        # gcd-combine all nonzero entries of column c into row r
        while True:
            nz = [i for i in range(r, cols) if b[i][c] != 0]
            k = min(nz, key=lambda i: abs(b[i][c]))
            if k != r:
                b[r], b[k] = b[k], b[r]
                u[r], u[k] = u[k], u[r]
            done = True
            for i in range(r + 1, cols):
                if b[i][c]:
                    q = b[i][c] // b[r][c]
                    if q:
                        bi, br = b[i], b[r]
                        for j in range(c, rows):
                            bi[j] -= q * br[j]
                        ui, ur = u[i], u[r]
                        for j in range(cols):
                            ui[j] -= q * ur[j]
                    if b[i][c]:
                        done = False
            if done:
                break
        if b[r][c] < 0:
            b[r] = [-x for x in b[r]]
            u[r] = [-x for x in u[r]]
        piv = b[r][c]
        for i in range(r):
            q = b[i][c] // piv
            if q:
                bi, br = b[i], b[r]
                for j in range(c, rows):
                    bi[j] -= q * br[j]
                ui, ur = u[i], u[r]
                for j in range(cols):
                    ui[j] -= q * ur[j]
        r += 1
    h = _transpose(b[:r]) if r else [[] for _ in range(rows)]
    t = _transpose(u[:r]) if r else [[] for _ in range(cols)]
    return h, t


def hnf_pivots(h: Sequence[Sequence[int]]) -> List[int]:
    """Pivot rows of a column-HNF basis (first nonzero row of each column)."""
    if not h or not h[0]:
        return []
    piv = []
    for k in range(len(h[0])):
        piv.append(next(i for i in range(len(h)) if h[i][k] != 0))
    return piv


def solve_hnf(h: Sequence[Sequence[int]], piv: Sequence[int], target: Sequence[int]) -> List[int]:
    """Integer coordinates of ``target`` in a column-HNF basis (forward substitution)."""
    x: List[int] = []
    res = list(target)
    for k, row in enumerate(piv):
        for i in range(row):
            if res[i]:
                raise NotInLattice("target leaves the span of the basis")
        q, rem = divmod(res[row], h[row][k])
        if rem:
            raise NotInLattice("non-integral coordinate")
        x.append(q)
        if q:
            for i in range(row, len(res)):
                res[i] -= q * h[i][k]
    if any(res):
        raise NotInLattice("target leaves the span of the basis")
    return x


def solve_rational(basis: Sequence[Sequence], target: Sequence) -> List[Fraction] | None:
    """Solve ``basis @ x = target`` over Q for independent columns; None if no solution."""
    rows = len(basis)
    ncol = len(basis[0]) if rows else 0
    a = [[Fraction(v) for v in basis[i]] + [Fraction(target[i])] for i in range(rows)]
    piv_cols = []
    r = 0
    for c in range(ncol):
        k = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
    if any(a[i][ncol] != 0 for i in range(r, rows)):
        return None
    if len(piv_cols) < ncol:
        raise ValueError("basis columns are not linearly independent")
    return [a[i][ncol] for i in range(ncol)]


def solve_integral(basis: Sequence[Sequence[int]], target: Sequence[int]) -> List[int]:
    """Integer ``x`` with ``basis @ x = target``.

    Raises :class:`NotInLattice` when no rational solution exists or the
    solution has a non-integral entry.
    """
    x = solve_rational(basis, target)
    if x is None:
        raise NotInLattice("no rational solution")
    if any(v.denominator != 1 for v in x):
        raise NotInLattice("solution is not integral")
    return [int(v) for v in x]


def rank_q(m: Sequence[Sequence]) -> int:
    """Rank over Q (fraction-free elimination)."""
    a = [list(map(int, r)) if all(isinstance(v, int) for v in r) else [Fraction(v) for v in r] for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    for c in range(cols):
        k = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        for i in range(r + 1, rows):
            if a[i][c] != 0:
                f, g = a[r][c], a[i][c]
                a[i] = [f * vi - g * vr for vi, vr in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    """Exact product of two list-of-rows matrices."""
    if not a:
        return []
    inner = len(b)
    ncol = len(b[0]) if inner else 0
    bt = list(zip(*b)) if inner else [() for _ in range(ncol)]
    if not inner:
        return [[0] * ncol for _ in a]
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]
