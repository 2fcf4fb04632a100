"""Normal affine semigroup rings presented by pointed rational cones.

An ``AffineMonoid`` is the set of lattice points of a pointed, full
dimensional rational cone.  The lattice is either the ambient ``Z^d`` or a
sublattice cut out by one congruence ``sum w_i m_i = 0 (mod n)`` (``n = 0``
means an honest linear equation); internally everything is normalized to
``Z^rank`` through a basis change, and points are reported in the user's
ambient coordinates.

Sign conventions, fixed once and asserted by the test suite:

* ``div(x^m) = sum_F <m, v_F> D_F`` over the primitive facet normals ``v_F``;
* the module of a divisor ``D = (a_F)`` is ``p(D) = {m : <m, v_F> >= -a_F}``;
* the canonical divisor is ``K = sum_F (-1) D_F``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from . import intlinalg as la
from . import polyhedra
from .errors import (BudgetExceeded, NotFullDimensional, NotPointed,
                     ParseError)

DEFAULT_BOX_FACTOR = 8
HILBERT_BUDGET = 400_000


@dataclass(frozen=True)
class WeilDivisor:
    """Integer coefficients, one per facet, in the monoid's facet order."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __add__(self, other):
        return WeilDivisor(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return WeilDivisor(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return WeilDivisor(tuple(-a for a in self.coeffs))

    def __mul__(self, k: int):
        return WeilDivisor(tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def __len__(self):
        return len(self.coeffs)


class AffineMonoid:
    """Pointed full-dimensional cone with its lattice and divisor machinery."""

    def __init__(self, *, basis, normals_internal, rays_internal, ambient_dim):
        # basis: ambient_dim x rank integer matrix, columns span the lattice.
        self.basis = basis
        self.ambient_dim = ambient_dim
        self.rank = basis.shape[1]
        self.facet_normals = tuple(tuple(int(x) for x in v) for v in normals_internal)
        self.rays_internal = tuple(tuple(int(x) for x in r) for r in rays_internal)
        self._identity_lattice = (ambient_dim == self.rank
                                  and all(basis[i][j] == (1 if i == j else 0)
                                          for i in range(ambient_dim)
                                          for j in range(self.rank)))
        if not self._identity_lattice:
            # Exact rational left inverse of the basis, for ambient -> internal.
            bt = basis.T
            gram = bt @ basis
            n = gram.shape[0]
            aug = [[Fraction(int(gram[i][j])) for j in range(n)] for i in range(n)]
            inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
            for col in range(n):
                piv = next(r for r in range(col, n) if aug[r][col])
                aug[col], aug[piv] = aug[piv], aug[col]
                inv[col], inv[piv] = inv[piv], inv[col]
                s = aug[col][col]
                aug[col] = [x / s for x in aug[col]]
                inv[col] = [x / s for x in inv[col]]
                for r in range(n):
                    if r != col and aug[r][col]:
                        f = aug[r][col]
                        aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
                        inv[r] = [a - f * b for a, b in zip(inv[r], inv[col])]
            self._left_inverse = [[sum(inv[i][k] * int(bt[k][j]) for k in range(n))
                                   for j in range(ambient_dim)] for i in range(n)]
        else:
            self._left_inverse = None
        self._class_group = None
        self._hilbert = None
        self._spec_echo = None

    # ---------------------------------------------------------------- lattice

    def to_ambient(self, u) -> tuple[int, ...]:
        v = self.basis @ la.intvec(u)
        return tuple(int(x) for x in v)

    def from_ambient(self, m) -> tuple[int, ...] | None:
        """Internal coordinates of an ambient vector, or None if off-lattice."""
        if self._identity_lattice:
            return tuple(int(x) for x in m)
        out = []
        for row in self._left_inverse:
            val = sum(c * int(x) for c, x in zip(row, m))
            if val.denominator != 1:
                return None
            out.append(int(val))
        # The left inverse is exact only on the column span; verify.
        if self.to_ambient(out) != tuple(int(x) for x in m):
            return None
        return tuple(out)

    # ------------------------------------------------------------ cone basics

    @property
    def facet_count(self) -> int:
        return len(self.facet_normals)

    def pair(self, u, facet: int) -> int:
        """<u, v_F> in internal coordinates."""
        v = self.facet_normals[facet]
        return sum(a * b for a, b in zip(u, v))

    def pairing_vector(self, u) -> tuple[int, ...]:
        return tuple(self.pair(u, f) for f in range(self.facet_count))

    def contains_internal(self, u) -> bool:
        return all(self.pair(u, f) >= 0 for f in range(self.facet_count))

    def rays_ambient(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.to_ambient(r) for r in self.rays_internal)

    def degree(self, u) -> int:
        """Pairing with the sum of the facet normals (a positive grading)."""
        return sum(self.pair(u, f) for f in range(self.facet_count))

    # ---------------------------------------------------------- constructors

    @staticmethod
    def from_rays(rays, congruence=None) -> "AffineMonoid":
        rays = [tuple(int(x) for x in r) for r in rays]
        if not rays:
            raise NotFullDimensional("no rays given")
        ambient_dim = len(rays[0])
        basis = _lattice_basis(ambient_dim, congruence)
        internal_rays = []
        for r in rays:
            u = _ray_to_internal(basis, r)
            if u is None:
                raise ParseError(f"ray {r} does not lie in the lattice subspace")
            internal_rays.append(u)
        rank = basis.shape[1]
        if la.rank(la.intmat(internal_rays)) < rank:
            raise NotFullDimensional("rays do not span the lattice")
        normals = _dual_normals_fm(internal_rays, rank)
        normals = _facet_filter(normals, internal_rays, rank)
        if not normals or la.rank(la.intmat(normals)) < rank:
            raise NotPointed("cone contains a line")
        normals = sorted(normals)
        ext_rays = _extreme_rays(normals, rank)
        return AffineMonoid(basis=basis, normals_internal=normals,
                            rays_internal=ext_rays, ambient_dim=ambient_dim)

    @staticmethod
    def from_normals(normals, congruence=None) -> "AffineMonoid":
        normals = [tuple(int(x) for x in v) for v in normals]
        if not normals:
            raise NotPointed("no facet normals given")
        ambient_dim = len(normals[0])
        basis = _lattice_basis(ambient_dim, congruence)
        rank = basis.shape[1]
        internal = []
        for v in normals:
            w = tuple(int(x) for x in (basis.T @ la.intvec(v)))
            w = la.primitive(w)
            if not any(w):
                raise ParseError(f"normal {v} vanishes on the lattice")
            internal.append(w)
        if len(set(internal)) != len(internal):
            raise ParseError("duplicate facet normals")
        if la.rank(la.intmat(internal)) < rank:
            raise NotPointed("cone contains a line")
        # Full-dimensionality: a strictly interior rational point must exist.
        ineqs = [(v, 0, True) for v in internal]
        if polyhedra.rational_point(ineqs, [], rank) is None:
            raise NotFullDimensional("inequalities admit no interior point")
        rays = _extreme_rays(internal, rank)
        kept = _facet_filter(internal, rays, rank, preserve_order=True)
        if len(kept) != len(internal):
            raise ParseError("redundant facet normals in input")
        return AffineMonoid(basis=basis, normals_internal=internal,
                            rays_internal=rays, ambient_dim=ambient_dim)

    @staticmethod
    def from_inequalities(normals) -> "AffineMonoid":
        """Like from_normals on Z^d, but tolerates redundant or duplicate
        inequalities: they are primitivized, deduplicated and filtered down
        to the facet-defining ones (deterministically sorted)."""
        normals = [la.primitive(tuple(int(x) for x in v)) for v in normals]
        normals = sorted({v for v in normals if any(v)})
        if not normals:
            raise NotPointed("no nonzero inequalities")
        rank = len(normals[0])
        if la.rank(la.intmat(normals)) < rank:
            raise NotPointed("cone contains a line")
        ineqs = [(v, 0, True) for v in normals]
        if polyhedra.rational_point(ineqs, [], rank) is None:
            raise NotFullDimensional("inequalities admit no interior point")
        rays = _extreme_rays(normals, rank)
        kept = _facet_filter(normals, rays, rank)
        return AffineMonoid(basis=la.identity(rank), normals_internal=kept,
                            rays_internal=rays, ambient_dim=rank)

    # --------------------------------------------------------------- divisors

    def divisor(self, coeffs) -> WeilDivisor:
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != self.facet_count:
            raise ValueError("divisor length does not match facet count")
        return WeilDivisor(coeffs)

    def zero_divisor(self) -> WeilDivisor:
        return WeilDivisor((0,) * self.facet_count)

    def canonical_divisor(self) -> WeilDivisor:
        return WeilDivisor((-1,) * self.facet_count)

    def principal_divisor(self, ambient_point) -> WeilDivisor:
        u = self.from_ambient(ambient_point)
        if u is None:
            raise ValueError("point is not in the lattice")
        return WeilDivisor(self.pairing_vector(u))

    def divisorial_contains(self, D: WeilDivisor, ambient_point) -> bool:
        u = self.from_ambient(ambient_point)
        if u is None:
            return False
        return all(self.pair(u, f) >= -D.coeffs[f] for f in range(self.facet_count))

    def contains(self, ambient_point) -> bool:
        return self.divisorial_contains(self.zero_divisor(), ambient_point)

    def default_box(self, *divisors) -> int:
        m = max((abs(c) for D in divisors for c in D.coeffs), default=0)
        return DEFAULT_BOX_FACTOR * (m + 1)

    def _box_internal(self, box: int):
        """(ambient points, internal coordinates) for the whole box, as int64
        arrays in lexicographic order.  Exact: magnitudes are guarded."""
        if box < 0:
            raise ValueError("box must be nonnegative")
        cached = getattr(self, "_box_cache", None)
        if cached is not None and cached[0] == box:
            return cached[1], cached[2]
        axis = np.arange(-box, box + 1, dtype=np.int64)
        grids = np.meshgrid(*([axis] * self.ambient_dim), indexing="ij")
        pts = np.stack(grids, axis=-1).reshape(-1, self.ambient_dim)
        if self._identity_lattice:
            internal = pts
        else:
            num, den = self._scaled_left_inverse()
            num = np.array(num, dtype=np.int64)
            raw = pts @ num.T
            ok = (raw % den == 0).all(axis=1)
            internal = raw // den
            basis = np.array([[int(x) for x in row] for row in self.basis],
                             dtype=np.int64)
            back = internal @ basis.T
            ok &= (back == pts).all(axis=1)
            pts = pts[ok]
            internal = internal[ok]
        guard = (box + 1) * max(
            (abs(int(x)) for v in self.facet_normals for x in v), default=1)
        assert guard * (self.rank + 1) < 2 ** 60, "int64 fast path overflow"
        self._box_cache = (box, pts, internal)
        return pts, internal

    def _scaled_left_inverse(self):
        """Integer matrix and denominator with left_inverse = num / den."""
        if getattr(self, "_sli", None) is None:
            den = 1
            for row in self._left_inverse:
                for f in row:
                    den = den * f.denominator // gcd(den, f.denominator)
            num = [[int(f * den) for f in row] for row in self._left_inverse]
            self._sli = (num, den)
        return self._sli

    def divisorial_points(self, D: WeilDivisor, box: int) -> list[tuple[int, ...]]:
        """Lattice points of p(D) with ambient sup-norm <= box, sorted."""
        pts, internal = self._box_internal(box)
        normals = np.array([list(v) for v in self.facet_normals], dtype=np.int64)
        vals = internal @ normals.T
        lows = np.array([-c for c in D.coeffs], dtype=np.int64)
        mask = (vals >= lows).all(axis=1)
        return [tuple(int(x) for x in row) for row in pts[mask]]

    def monoid_points(self, box: int) -> list[tuple[int, ...]]:
        return self.divisorial_points(self.zero_divisor(), box)

    def lattice_points_in_box(self, box: int) -> list[tuple[int, ...]]:
        """All lattice points (not just cone points) of sup-norm <= box."""
        pts, _ = self._box_internal(box)
        return [tuple(int(x) for x in row) for row in pts]

    def pairing_table(self, box: int):
        """(ambient points, facet-value table) for the box, int64."""
        pts, internal = self._box_internal(box)
        normals = np.array([list(v) for v in self.facet_normals], dtype=np.int64)
        return pts, internal @ normals.T

    # ------------------------------------------------------------ class group

    def pairing_matrix(self) -> np.ndarray:
        return la.intmat(self.facet_normals)

    def class_group(self):
        """(Cl, div_map): Cl = Z^facets / principal divisors."""
        if self._class_group is None:
            self._class_group = la.cokernel(self.pairing_matrix())
        group = self._class_group
        return group, lambda D: group.element(D.coeffs)

    def divisor_class(self, D: WeilDivisor) -> la.GroupElement:
        group, div_map = self.class_group()
        return div_map(D)

    # ---------------------------------------------------------- Hilbert basis

    def hilbert_basis(self, budget: int = HILBERT_BUDGET) -> list[tuple[int, ...]]:
        """Minimal generating set, in ambient coordinates.

        Candidates are enumerated up to the degree bound ``sum_r deg(r)``
        over the extreme rays: any deeper point exceeds coefficient 1 on a
        ray of a triangulation cone and is therefore reducible.  The
        irreducibility filter is exact, and a decomposition certificate for
        all candidates and all pairwise basis sums is re-checked.
        """
        if self._hilbert is None:
            self._hilbert = self._compute_hilbert(budget)
        return [self.to_ambient(u) for u in self._hilbert]

    def hilbert_basis_internal(self, budget: int = HILBERT_BUDGET):
        self.hilbert_basis(budget)
        return list(self._hilbert)

    def _compute_hilbert(self, budget):
        deg_cap = sum(self.degree(r) for r in self.rays_internal)
        candidates = self._points_with_lower_bounds(
            lows=[0] * self.facet_count, deg_cap=deg_cap, budget=budget)
        candidates = [u for u in candidates if any(u)]
        candidates.sort(key=lambda u: (self.degree(u), u))
        basis = []
        for u in candidates:
            deg_u = self.degree(u)
            reducible = False
            for p in candidates:
                if self.degree(p) >= deg_u:
                    break
                diff = tuple(a - b for a, b in zip(u, p))
                if self.contains_internal(diff):
                    reducible = True
                    break
            if not reducible:
                basis.append(u)
        self._certify_generation(basis, candidates)
        return basis

    def _certify_generation(self, basis, candidates):
        memo = {}

        def decomposes(u):
            if not any(u):
                return True
            if u in memo:
                return memo[u]
            memo[u] = False  # guard against cycles (cannot occur: degree drops)
            for h in basis:
                diff = tuple(a - b for a, b in zip(u, h))
                if self.contains_internal(diff) and decomposes(diff):
                    memo[u] = True
                    break
            return memo[u]

        for u in candidates:
            if not decomposes(u):
                raise AssertionError(f"generation certificate failed at {u}")
        for h1 in basis:
            for h2 in basis:
                s = tuple(a + b for a, b in zip(h1, h2))
                if not decomposes(s):
                    raise AssertionError(f"closure certificate failed at {s}")

    def _independent_normal_rows(self):
        rows = []
        idx = []
        for f, v in enumerate(self.facet_normals):
            trial = rows + [v]
            if la.rank(la.intmat(trial)) == len(trial):
                rows.append(v)
                idx.append(f)
            if len(rows) == self.rank:
                break
        assert len(rows) == self.rank
        return idx, la.intmat(rows)

    def _points_with_lower_bounds(self, lows, deg_cap, budget):
        """All lattice points u with <u, v_F> >= -lows[F] and degree(u) <= deg_cap.

        Enumerates value tuples at `rank` independent facet normals and
        inverts exactly; complete because each chosen value t_i satisfies
        t_i <= deg_cap + sum_{F != i} lows[F].
        """
        idx, M = self._independent_normal_rows()
        detM = la.det(M)
        adj = _adjugate(M, detM)
        total_low = sum(lows)
        ranges = []
        total = 1
        for f in idx:
            lo = -lows[f]
            hi = deg_cap + (total_low - lows[f])
            ranges.append(range(lo, hi + 1))
            total *= max(len(ranges[-1]), 0)
            if total > budget:
                raise BudgetExceeded(
                    f"facet-value enumeration of {total} tuples exceeds {budget}")
        pts = []
        for t in itertools.product(*ranges):
            x = adj @ la.intvec(t)
            if any(int(v) % detM for v in x):
                continue
            u = tuple(int(v) // detM for v in x)
            if all(self.pair(u, f) >= -lows[f] for f in range(self.facet_count)) \
                    and self.degree(u) <= deg_cap:
                pts.append(u)
        return sorted(set(pts))

    # ------------------------------------------------------ module generators

    def module_generators(self, D: WeilDivisor,
                          budget: int = HILBERT_BUDGET) -> list[tuple[int, ...]]:
        """Minimal generators of p(D) over the monoid, ambient coordinates."""
        verts = self._vertices(D)
        top = max(verts, default=Fraction(0))
        vertex_bound = int(top) + (1 if top > int(top) else 0)
        deg_cap = vertex_bound + sum(self.degree(r) for r in self.rays_internal)
        lows = list(D.coeffs)
        pts = self._points_with_lower_bounds(lows=lows, deg_cap=deg_cap,
                                             budget=budget)
        hb = self.hilbert_basis_internal()
        gens = []
        for u in pts:
            minimal = True
            for h in hb:
                diff = tuple(a - b for a, b in zip(u, h))
                if all(self.pair(diff, f) >= -D.coeffs[f]
                       for f in range(self.facet_count)):
                    minimal = False
                    break
            if minimal:
                gens.append(u)
        gens.sort(key=lambda u: (self.degree(u), u))
        return [self.to_ambient(u) for u in gens]

    def _vertices(self, D: WeilDivisor):
        """Degrees of the vertices of {u : <u, v_F> >= -a_F} (as Fractions)."""
        degs = []
        n = self.facet_count
        for subset in itertools.combinations(range(n), self.rank):
            M = la.intmat([self.facet_normals[f] for f in subset])
            if la.det(M) == 0:
                continue
            rhs = [-D.coeffs[f] for f in subset]
            detM = la.det(M)
            adj = _adjugate(M, detM)
            x = adj @ la.intvec(rhs)
            u = [Fraction(int(v), detM) for v in x]
            ok = all(
                sum(Fraction(a) * b for a, b in zip(self.facet_normals[f], u))
                >= -D.coeffs[f] for f in range(n))
            if ok:
                degs.append(sum(
                    sum(Fraction(a) * b for a, b in zip(self.facet_normals[f], u))
                    for f in range(n)))
        return degs

    # ------------------------------------------------------------------- misc

    def ring_spec(self) -> dict:
        if self._spec_echo is not None:
            return dict(self._spec_echo)
        return {
            "lattice_rank": self.ambient_dim,
            "facet_normals": [list(v) for v in self.facet_normals],
        }

    def __repr__(self):
        return (f"AffineMonoid(rank={self.rank}, facets={self.facet_count}, "
                f"ambient_dim={self.ambient_dim})")


# ---------------------------------------------------------------- helpers


def _adjugate(M: np.ndarray, detM: int) -> np.ndarray:
    """adj(M) with adj(M) @ M = det(M) I, computed by cofactors."""
    n = M.shape[0]
    if n == 1:
        return la.intmat([[1]])
    adj = [[0] * n for _ in range(n)]
    rows = list(range(n))
    cols = list(range(n))
    for i in range(n):
        for j in range(n):
            minor = [[int(M[r][c]) for c in cols if c != j]
                     for r in rows if r != i]
            sign = -1 if (i + j) % 2 else 1
            adj[j][i] = sign * la.det(la.intmat(minor))
    A = la.intmat(adj)
    assert all(int((A @ M)[i][k]) == (detM if i == k else 0)
               for i in range(n) for k in range(n))
    return A


def _lattice_basis(ambient_dim: int, congruence) -> np.ndarray:
    if congruence is None:
        return la.identity(ambient_dim)
    weights = [int(w) for w in congruence["weights"]]
    modulus = int(congruence["modulus"])
    if len(weights) != ambient_dim:
        raise ParseError("congruence weights length mismatch")
    if modulus < 0:
        raise ParseError("congruence modulus must be nonnegative")
    if modulus == 0:
        # Honest linear equation: the lattice is ker(weights).
        ker = la.kernel_basis(la.intmat([weights]))
        return ker
    # Solutions of w.m + modulus*t = 0 projected to m.
    ker = la.kernel_basis(la.intmat([weights + [modulus]]))
    basis = ker[:-1, :]
    # The projection can repeat columns' span; reduce to a genuine basis of
    # the rank-d sublattice via the Smith form of the candidate generators.
    U, D, V = la.smith_normal_form(basis)
    r = sum(1 for d in la.diagonal_of(D) if d)
    if r != ambient_dim:
        raise ParseError("congruence lattice is not full rank")
    cols = (basis @ V)[:, :r]
    # Columns of basis @ V generate the same lattice; the first r are a basis.
    return cols


def _ray_to_internal(basis: np.ndarray, ray) -> tuple[int, ...] | None:
    """Primitive internal representative of an ambient ray direction."""
    m, r = basis.shape
    aug = [[Fraction(int(basis[i][j])) for j in range(r)] for i in range(m)]
    target = [Fraction(int(x)) for x in ray]
    # Solve basis * u = ray over Q by elimination.
    piv_rows = []
    u = [Fraction(0)] * r
    mat = [row[:] + [t] for row, t in zip(aug, target)]
    col = 0
    for c in range(r):
        piv = next((i for i in range(col, m) if mat[i][c]), None)
        if piv is None:
            continue
        mat[col], mat[piv] = mat[piv], mat[col]
        s = mat[col][c]
        mat[col] = [x / s for x in mat[col]]
        for i in range(m):
            if i != col and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[col])]
        piv_rows.append(c)
        col += 1
    for i in range(col, m):
        if mat[i][r]:
            return None  # ray not in the lattice subspace
    for i, c in enumerate(piv_rows):
        u[c] = mat[i][r]
    den = 1
    for x in u:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in u]
    return la.primitive(ints)


def _dual_normals_fm(rays, rank) -> list[tuple[int, ...]]:
    """Inequality description of cone(rays) by Fourier-Motzkin elimination.

    Eliminates the multipliers from {x = sum lambda_i r_i, lambda >= 0}.
    """
    k = len(rays)
    dim = rank + k
    eqs = []
    for j in range(rank):
        coeffs = [0] * dim
        coeffs[j] = 1
        for i, r in enumerate(rays):
            coeffs[rank + i] = -r[j]
        eqs.append((tuple(coeffs), 0))
    ineqs = []
    for i in range(k):
        coeffs = [0] * dim
        coeffs[rank + i] = 1
        ineqs.append((tuple(coeffs), 0, False))
    cur_i, cur_e = ineqs, eqs
    for j in range(dim - 1, rank - 1, -1):
        cur_i, cur_e = polyhedra.eliminate_variable(cur_i, cur_e, j)
    for e, f in cur_e:
        if any(e[:rank]) or f:
            raise NotFullDimensional("rays span a proper subspace")
    normals = set()
    for a, c, _ in cur_i:
        assert c == 0
        v = la.primitive(a[:rank])
        if any(v):
            normals.add(v)
    return sorted(normals)


def _facet_filter(normals, rays, rank, preserve_order=False):
    """Keep only normals whose tight rays span a facet (rank = rank-1)."""
    kept = []
    for v in normals:
        tight = [r for r in rays
                 if sum(a * b for a, b in zip(v, r)) == 0]
        tight_rank = la.rank(la.intmat(tight)) if tight else 0
        if all(sum(a * b for a, b in zip(v, r)) >= 0 for r in rays):
            if tight_rank == rank - 1:
                kept.append(v)
    return kept if preserve_order else sorted(set(kept))


def _extreme_rays(normals, rank) -> list[tuple[int, ...]]:
    """Extreme rays of {x : <x, v> >= 0 for v in normals}, sorted."""
    rays = set()
    for subset in itertools.combinations(range(len(normals)), rank - 1):
        M = la.intmat([normals[f] for f in subset]) if subset else la.zeros(0, rank)
        if subset and la.rank(M) != rank - 1:
            continue
        if not subset and rank != 1:
            continue
        ker = la.kernel_basis(M) if subset else la.identity(rank)
        if ker.shape[1] != 1:
            continue
        v = la.primitive(tuple(int(x) for x in ker[:, 0]))
        for cand in (v, tuple(-x for x in v)):
            if all(sum(a * b for a, b in zip(n, cand)) >= 0 for n in normals):
                rays.add(cand)
                break
    # Drop any non-extreme survivors: an extreme ray has tight normals of
    # rank exactly rank-1 (automatic here), and must not be a positive
    # combination of others; for cones this filter is the incidence test.
    out = []
    for r in rays:
        tight = [n for n in normals if sum(a * b for a, b in zip(n, r)) == 0]
        if not tight and rank > 1:
            continue
        if rank == 1 or la.rank(la.intmat(tight)) == rank - 1:
            out.append(r)
    return sorted(out)


# ------------------------------------------------------------- ring specs


def from_ring_spec(spec: dict) -> AffineMonoid:
    """Build a monoid from the JSON ring-spec dictionary."""
    if not isinstance(spec, dict):
        raise ParseError("ring spec must be an object")
    if "lattice_rank" not in spec:
        raise ParseError("ring spec needs lattice_rank")
    d = int(spec["lattice_rank"])
    congruence = spec.get("congruence")
    if congruence is not None:
        if not isinstance(congruence, dict) or \
                "weights" not in congruence or "modulus" not in congruence:
            raise ParseError("congruence needs weights and modulus")
    has_rays = "rays" in spec
    has_normals = "facet_normals" in spec
    if has_rays == has_normals:
        raise ParseError("ring spec needs exactly one of rays / facet_normals")
    try:
        if has_rays:
            rays = [list(map(int, r)) for r in spec["rays"]]
            if any(len(r) != d for r in rays):
                raise ParseError("ray length does not match lattice_rank")
            monoid = AffineMonoid.from_rays(rays, congruence=congruence)
        else:
            normals = [list(map(int, v)) for v in spec["facet_normals"]]
            if any(len(v) != d for v in normals):
                raise ParseError("normal length does not match lattice_rank")
            monoid = AffineMonoid.from_normals(normals, congruence=congruence)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed ring spec: {exc}") from exc
    monoid._spec_echo = spec
    return monoid


def divisor_from_spec(monoid: AffineMonoid, spec: dict) -> WeilDivisor:
    if not isinstance(spec, dict) or "coeffs" not in spec:
        raise ParseError("divisor spec needs coeffs")
    try:
        return monoid.divisor([int(c) for c in spec["coeffs"]])
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed divisor spec: {exc}") from exc
