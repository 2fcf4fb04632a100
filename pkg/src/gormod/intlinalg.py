"""Exact integer linear algebra: Smith normal form, cokernels, group elements.

Matrices are numpy arrays with ``dtype=object`` holding Python ints, so all
arithmetic is arbitrary precision.  ``smith_normal_form`` uses a fixed pivot
rule (smallest nonzero absolute value, ties broken by lexicographic position)
so that its output, and everything downstream of it, is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np


def intmat(rows) -> np.ndarray:
    """Build an exact integer matrix (dtype=object) from nested sequences."""
    arr = np.array([[int(x) for x in row] for row in rows], dtype=object)
    if arr.ndim != 2:
        raise ValueError("expected a two-dimensional array of integers")
    return arr


def intvec(entries) -> np.ndarray:
    return np.array([int(x) for x in entries], dtype=object)


def identity(n: int) -> np.ndarray:
    return np.array([[1 if i == j else 0 for j in range(n)] for i in range(n)],
                    dtype=object)


def zeros(m: int, n: int) -> np.ndarray:
    return np.array([[0] * n for _ in range(m)], dtype=object) if m and n \
        else np.empty((m, n), dtype=object)


def primitive(v) -> tuple[int, ...]:
    """v divided by the gcd of its entries (the zero vector is unchanged)."""
    v = tuple(int(x) for x in v)
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return v
    return tuple(x // g for x in v)


def smith_normal_form(A: np.ndarray):
    """Smith normal form with transforms.

    Returns (U, D, V) with U, V unimodular and D = U @ A @ V diagonal,
    diagonal entries nonnegative and forming a divisibility chain
    d_1 | d_2 | ... .  Pivoting is deterministic: at each stage the entry of
    smallest nonzero absolute value is chosen, ties broken by position.
    """
    D = A.copy() if A.dtype == object else intmat(A)
    m, n = D.shape
    U = identity(m)
    V = identity(n)

    def row_op(i, j, q):
        # row_i -= q * row_j
        D[i, :] -= q * D[j, :]
        U[i, :] -= q * U[j, :]

    def col_op(i, j, q):
        D[:, i] -= q * D[:, j]
        V[:, i] -= q * V[:, j]

    def swap_rows(i, j):
        if i != j:
            D[[i, j], :] = D[[j, i], :]
            U[[i, j], :] = U[[j, i], :]

    def swap_cols(i, j):
        if i != j:
            D[:, [i, j]] = D[:, [j, i]]
            V[:, [i, j]] = V[:, [j, i]]

    for t in range(min(m, n)):
        # Deterministic pivot: smallest |entry| != 0, then lexicographic.
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                e = abs(D[i, j])
                if e and (pivot is None or e < pivot[0]):
                    pivot = (e, i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[1])
        swap_cols(t, pivot[2])

        while True:
            # Clear column t below the pivot.
            restart = False
            for i in range(t + 1, m):
                if D[i, t]:
                    q = D[i, t] // D[t, t]
                    row_op(i, t, q)
                    if D[i, t]:
                        # Remainder is strictly smaller; promote it.
                        swap_rows(t, i)
                        restart = True
            if restart:
                continue
            for j in range(t + 1, n):
                if D[t, j]:
                    q = D[t, j] // D[t, t]
                    col_op(j, t, q)
                    if D[t, j]:
                        swap_cols(t, j)
                        restart = True
            if restart:
                continue
            # Divisibility: d_t must divide the whole remaining block.
            offender = None
            d = D[t, t]
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i, j] % d:
                        offender = j
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            col_op(t, offender, -1)  # bring the offending column into column t

        if D[t, t] < 0:
            D[t, :] = -D[t, :]
            U[t, :] = -U[t, :]

    return U, D, V


def diagonal_of(D: np.ndarray) -> list[int]:
    return [int(D[i, i]) for i in range(min(D.shape))]


def rank(A: np.ndarray) -> int:
    if 0 in A.shape:
        return 0
    _, D, _ = smith_normal_form(A)
    return sum(1 for d in diagonal_of(D) if d)


def kernel_basis(A: np.ndarray) -> np.ndarray:
    """Columns form a basis of the integer kernel of A (n x k)."""
    m, n = A.shape
    U, D, V = smith_normal_form(A)
    r = sum(1 for d in diagonal_of(D) if d)
    return V[:, r:]


def solve_integer(A: np.ndarray, b) -> np.ndarray | None:
    """One integer solution of A x = b, or None. Free coordinates are set to 0."""
    m, n = A.shape
    U, D, V = smith_normal_form(A)
    c = U @ intvec(b)
    z = [0] * n
    for i in range(m):
        d = D[i, i] if i < min(m, n) else 0
        if d:
            if c[i] % d:
                return None
            z[i] = c[i] // d
        elif c[i]:
            return None
    return V @ intvec(z)


def det(A: np.ndarray) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    m, n = A.shape
    if m != n:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    M = [[int(x) for x in row] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def inverse_unimodular(U: np.ndarray) -> np.ndarray:
    """Exact inverse of a unimodular integer matrix."""
    n = U.shape[0]
    d = det(U)
    if abs(d) != 1:
        raise ValueError("matrix is not unimodular")
    frac = [[Fraction(int(x)) for x in row] for row in U]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if frac[r][col])
        frac[col], frac[piv] = frac[piv], frac[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        scale = frac[col][col]
        frac[col] = [x / scale for x in frac[col]]
        inv[col] = [x / scale for x in inv[col]]
        for r in range(n):
            if r != col and frac[r][col]:
                f = frac[r][col]
                frac[r] = [a - f * b for a, b in zip(frac[r], frac[col])]
                inv[r] = [a - f * b for a, b in zip(inv[r], inv[col])]
    out = [[int(x) for x in row] for row in inv]
    assert all(x.denominator == 1 for row in inv for x in row)
    return intmat(out)


@dataclass(frozen=True)
class FgAbelianGroup:
    """Finitely generated abelian group in Smith normal coordinates.

    The group is a quotient Z^r / image(A).  ``basis_change`` is the
    unimodular U from the Smith form of A: applying it to an ambient vector
    gives normal-form coordinates, of which ``torsion_positions`` are read
    modulo the matching invariant factor and ``free_positions`` are read as
    honest integers.  Positions whose diagonal entry is 1 carry no
    information and are dropped.
    """

    free_rank: int
    invariant_factors: tuple[int, ...]
    basis_change: np.ndarray
    torsion_positions: tuple[int, ...]
    free_positions: tuple[int, ...]

    def __post_init__(self):
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError("invariant factors must form a divisibility chain")
        if any(d < 2 for d in self.invariant_factors):
            raise ValueError("invariant factors must be at least 2")

    @property
    def ambient_rank(self) -> int:
        return self.basis_change.shape[0]

    def element(self, ambient) -> "GroupElement":
        v = intvec(ambient)
        if len(v) != self.ambient_rank:
            raise ValueError("ambient vector has wrong length")
        z = self.basis_change @ v
        torsion = tuple(int(z[p]) % d
                        for p, d in zip(self.torsion_positions, self.invariant_factors))
        free = tuple(int(z[p]) for p in self.free_positions)
        return GroupElement(self, torsion, free)

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * len(self.invariant_factors),
                            (0,) * self.free_rank)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def describe(self) -> str:
        """Canonical name such as 'Z', 'Z_6', 'Z x Z_2', or 'trivial'."""
        parts = ["Z"] * self.free_rank + [f"Z_{d}" for d in self.invariant_factors]
        return " x ".join(parts) if parts else "trivial"

    def __str__(self):
        return self.describe()


@dataclass(frozen=True)
class GroupElement:
    group: FgAbelianGroup
    torsion: tuple[int, ...]
    free: tuple[int, ...]

    def __post_init__(self):
        for r, d in zip(self.torsion, self.group.invariant_factors):
            if not 0 <= r < d:
                raise ValueError("torsion residue out of range")

    def _check(self, other: "GroupElement"):
        if self.group is not other.group and self.group != other.group:
            raise ValueError("elements of different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        torsion = tuple((a + b) % d for a, b, d in
                        zip(self.torsion, other.torsion, self.group.invariant_factors))
        free = tuple(a + b for a, b in zip(self.free, other.free))
        return GroupElement(self.group, torsion, free)

    def __neg__(self) -> "GroupElement":
        torsion = tuple((-a) % d for a, d in
                        zip(self.torsion, self.group.invariant_factors))
        return GroupElement(self.group, torsion, tuple(-a for a in self.free))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __mul__(self, k: int) -> "GroupElement":
        torsion = tuple((a * k) % d for a, d in
                        zip(self.torsion, self.group.invariant_factors))
        return GroupElement(self.group, torsion, tuple(a * k for a in self.free))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.torsion) and not any(self.free)

    def order(self) -> int | None:
        """Exact order; None means infinite (some free coordinate is nonzero)."""
        if any(self.free):
            return None
        n = 1
        for r, d in zip(self.torsion, self.group.invariant_factors):
            if r:
                n = lcm(n, d // gcd(d, r))
        return n

    def key(self) -> tuple:
        """Hashable canonical form, for use in sets and sorted reports."""
        return (self.torsion, self.free)


def cokernel(A: np.ndarray) -> FgAbelianGroup:
    """The quotient Z^rows / image(A), with coordinates recorded.

    This is the divisor-class-group workhorse: rows index the ambient free
    group, columns the relations.
    """
    m, n = A.shape
    U, D, _ = smith_normal_form(A)
    diag = diagonal_of(D)
    torsion_positions = []
    invariant_factors = []
    free_positions = []
    for i in range(m):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            free_positions.append(i)
        elif d >= 2:
            torsion_positions.append(i)
            invariant_factors.append(d)
    return FgAbelianGroup(
        free_rank=len(free_positions),
        invariant_factors=tuple(invariant_factors),
        basis_change=U,
        torsion_positions=tuple(torsion_positions),
        free_positions=tuple(free_positions),
    )


def element_order(g: GroupElement, group: FgAbelianGroup | None = None) -> int | None:
    """Order of g in its group (None = infinite); see GroupElement.order."""
    if group is not None and group != g.group:
        raise ValueError("element does not belong to the given group")
    return g.order()
