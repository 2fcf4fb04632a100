"""Exact linear algebra over Q and prime fields.

GF(p) matrices are int64 numpy arrays with entries in [0, p); products stay
far below 2^63 at the dimensions used here, so arithmetic is exact.  Q
matrices are object arrays of Fractions sharing the same code paths.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


class GF:
    """Prime field F_p."""

    def __init__(self, p: int):
        p = int(p)
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p

    def asarray(self, data):
        return np.array(data, dtype=np.int64) % self.p

    def zeros(self, *shape):
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n):
        return np.eye(n, dtype=np.int64)

    def reduce(self, arr):
        return arr % self.p

    def inv_scalar(self, a):
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("inverting 0")
        return pow(a, self.p - 2, self.p)

    def element(self, x):
        return int(x) % self.p

    def iter_elements(self):
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class QQ:
    """The rationals, as exact Fractions in object arrays."""

    char = 0

    def asarray(self, data):
        arr = np.array(data, dtype=object)
        flat = arr.reshape(-1)
        for i, x in enumerate(flat):
            flat[i] = Fraction(x)
        return flat.reshape(arr.shape)

    def zeros(self, *shape):
        arr = np.empty(shape, dtype=object)
        arr[...] = Fraction(0)
        return arr

    def eye(self, n):
        arr = self.zeros(n, n)
        for i in range(n):
            arr[i, i] = Fraction(1)
        return arr

    def reduce(self, arr):
        return arr

    def inv_scalar(self, a):
        return 1 / Fraction(a)

    def element(self, x):
        return Fraction(x)

    def __eq__(self, other):
        return isinstance(other, QQ)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


def field_from_char(ch: int):
    return QQ() if ch == 0 else GF(ch)


def rref(F, A):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    A = F.reduce(np.array(A, copy=True))
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = F.inv_scalar(A[r, c])
        A[r] = F.reduce(A[r] * inv)
        col = A[:, c].copy()
        col[r] = 0
        A = F.reduce(A - np.outer(col, A[r]))
        pivots.append(c)
        r += 1
    return A, pivots


def rank(F, A):
    if 0 in A.shape:
        return 0
    return len(rref(F, A)[1])


def nullspace(F, A):
    """Columns span the right kernel of A."""
    m, n = A.shape
    if n == 0:
        return F.zeros(0, 0)
    if m == 0:
        return F.eye(n)
    R, pivots = rref(F, A)
    free = [c for c in range(n) if c not in pivots]
    K = F.zeros(n, len(free))
    for j, c in enumerate(free):
        K[c, j] = F.element(1)
        for i, pc in enumerate(pivots):
            K[pc, j] = F.reduce(-R[i, c])
    return F.reduce(K)


def solve(F, A, b):
    """One solution of A x = b, or None."""
    m, n = A.shape
    aug = np.concatenate([A, np.array(b).reshape(m, 1)], axis=1)
    R, pivots = rref(F, aug)
    if n in pivots:
        return None
    x = F.zeros(n)
    for i, c in enumerate(pivots):
        x[c] = R[i, n]
    return x


def inv(F, A):
    n = A.shape[0]
    aug = np.concatenate([A, F.eye(n)], axis=1)
    R, pivots = rref(F, aug)
    if list(pivots)[:n] != list(range(n)):
        return None
    return R[:, n:]


def row_space_basis(F, A):
    """Rows of the result are a reduced basis of the row space of A."""
    R, pivots = rref(F, A)
    return R[: len(pivots)]


def column_space_basis(F, A):
    return row_space_basis(F, A.T).T


def in_row_space(F, rows, v):
    """Whether v lies in the span of the rows.

    Fast path when the rows are already in reduced echelon form (leading
    coefficient 1): one elimination sweep instead of a fresh reduction.
    """
    if rows.shape[0] == 0:
        return not np.any(v != 0)
    echelon = True
    leads = []
    for row in rows:
        nz = np.flatnonzero(row != 0)
        if nz.size == 0 or row[nz[0]] != F.element(1):
            echelon = False
            break
        leads.append(nz[0])
    if echelon and leads == sorted(leads):
        w = np.array(v, copy=True)
        for lead, row in zip(leads, rows):
            if w[lead] != 0:
                w = F.reduce(w - w[lead] * row)
        return not np.any(w != 0)
    stacked = np.concatenate([rows, v.reshape(1, -1)], axis=0)
    return rank(F, stacked) == rank(F, rows)


def coords_in_rows(F, rows, v):
    """Coefficients expressing v in the given rows, or None."""
    sol = solve(F, rows.T, v)
    return sol


def is_invertible(F, A):
    return A.shape[0] == A.shape[1] and rank(F, A) == A.shape[0]


def kron_constraint(F, P, Q):
    """Matrix of H -> Q H - H P acting on vec(H) (column-major stacking).

    H has shape (rows of Q) x (cols of P); vec stacks columns.
    """
    n = Q.shape[0]
    m = P.shape[0]
    return F.reduce(np.kron(F.eye(m), Q) - np.kron(P.T, F.eye(n)))
