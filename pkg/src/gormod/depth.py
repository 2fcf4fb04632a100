"""Exact depth of divisorial ideals by graded local cohomology.

The cohomology of p(D) is computed degree by degree from the finite complex
indexed by the faces of the cone, where the face component survives in a
given degree exactly when the degree satisfies the shifted inequalities of
every facet containing that face.  Degrees with the same pattern of
satisfied facet inequalities ("chambers") share the same complex, so only
finitely many chambers need to be checked, and only the ones containing an
actual lattice point matter.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import intlinalg as la
from . import polyhedra
from .cones import AffineMonoid, WeilDivisor


@dataclass(frozen=True)
class Face:
    tight: frozenset  # indices of facets containing this face
    dim: int
    rays: tuple  # extreme rays of the monoid lying on the face
    basis: tuple  # ordered independent subset of those rays (orientation data)


class FaceLattice:
    """All faces of the cone, graded by dimension, with incidence signs."""

    def __init__(self, monoid: AffineMonoid):
        self.monoid = monoid
        self.faces = _enumerate_faces(monoid)
        self.by_dim = {}
        for idx, face in enumerate(self.faces):
            self.by_dim.setdefault(face.dim, []).append(idx)
        self.covers = {}  # (tau_idx, sigma_idx) -> sign
        for i, tau in enumerate(self.faces):
            for j, sigma in enumerate(self.faces):
                if sigma.dim == tau.dim + 1 and sigma.tight < tau.tight:
                    self.covers[(i, j)] = _incidence_sign(tau, sigma)
        self._assert_boundary_squares_to_zero()

    def __len__(self):
        return len(self.faces)

    def _assert_boundary_squares_to_zero(self):
        d = self.monoid.rank
        for i, tau in enumerate(self.faces):
            for k, ups in enumerate(self.faces):
                if ups.dim != tau.dim + 2 or not ups.tight < tau.tight:
                    continue
                total = 0
                for j, sigma in enumerate(self.faces):
                    if (i, j) in self.covers and (j, k) in self.covers:
                        total += self.covers[(i, j)] * self.covers[(j, k)]
                assert total == 0, "face incidence signs are inconsistent"

    def degree_piece_cohomology(self, present) -> list[int]:
        """Cohomology dimensions of the subcomplex on the given face indices.

        `present` is a set of face indices, necessarily upward closed.
        Returns dims of H^0..H^d.
        """
        d = self.monoid.rank
        comps = {i: sorted(idx for idx in self.by_dim.get(i, ())
                           if idx in present) for i in range(d + 1)}
        dims = []
        ranks = []
        for i in range(d + 1):
            rows = comps.get(i + 1, [])
            cols = comps.get(i, [])
            if not rows or not cols:
                ranks.append(0)
                continue
            mat = [[self.covers.get((c, r), 0) for c in cols] for r in rows]
            ranks.append(la.rank(la.intmat(mat)))
        for i in range(d + 1):
            dim_i = len(comps.get(i, []))
            rank_in = ranks[i - 1] if i > 0 else 0
            rank_out = ranks[i] if i < len(ranks) else 0
            dims.append(dim_i - rank_in - rank_out)
        assert all(x >= 0 for x in dims)
        return dims


def face_lattice(monoid: AffineMonoid) -> FaceLattice:
    return FaceLattice(monoid)


def _enumerate_faces(monoid: AffineMonoid) -> list[Face]:
    rays = monoid.rays_internal
    nf = monoid.facet_count
    seen = {}
    for subset in itertools.chain.from_iterable(
            itertools.combinations(range(nf), k) for k in range(nf + 1)):
        face_rays = tuple(r for r in rays
                          if all(monoid.pair(r, f) == 0 for f in subset))
        tight = frozenset(f for f in range(nf)
                          if all(monoid.pair(r, f) == 0 for r in face_rays)) \
            if face_rays else frozenset(range(nf))
        if tight in seen:
            continue
        dim = la.rank(la.intmat(face_rays)) if face_rays else 0
        basis = _independent_subset(face_rays, dim)
        seen[tight] = Face(tight=tight, dim=dim, rays=face_rays, basis=basis)
    faces = sorted(seen.values(), key=lambda f: (f.dim, sorted(f.tight)))
    return faces


def _independent_subset(vectors, target_rank):
    chosen = []
    for v in vectors:
        if len(chosen) == target_rank:
            break
        if la.rank(la.intmat(chosen + [v])) == len(chosen) + 1:
            chosen.append(v)
    assert len(chosen) == target_rank
    return tuple(chosen)


def _coords_in_basis(basis, vector):
    """Coordinates of `vector` in the rational span of `basis` (exact)."""
    k = len(basis)
    d = len(vector)
    mat = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(vector[i])]
           for i in range(d)]
    coords = [Fraction(0)] * k
    row = 0
    piv_of_col = {}
    for c in range(k):
        piv = next((r for r in range(row, d) if mat[r][c]), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        s = mat[row][c]
        mat[row] = [x / s for x in mat[row]]
        for r in range(d):
            if r != row and mat[r][c]:
                f = mat[r][c]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[row])]
        piv_of_col[c] = row
        row += 1
    for r in range(row, d):
        if mat[r][k]:
            raise ValueError("vector outside the span of the basis")
    for c, r in piv_of_col.items():
        coords[c] = mat[r][k]
    return coords


def _incidence_sign(tau: Face, sigma: Face) -> int:
    """Orientation sign between a face and a covering face.

    Uses a vector pointing from tau into sigma: the sign of the determinant
    expressing (v, basis of tau) in the basis of sigma is independent of the
    choice of v within the relative interior directions.
    """
    extra = [r for r in sigma.rays if r not in set(tau.rays)]
    v = tuple(sum(col) for col in zip(*extra)) if extra else None
    assert v is not None, "covering face adds no ray"
    vectors = [v] + list(tau.basis)
    coords = [_coords_in_basis(sigma.basis, w) for w in vectors]
    n = len(sigma.basis)
    assert len(vectors) == n
    detv = _fraction_det([[coords[j][i] for j in range(n)] for i in range(n)])
    assert detv != 0
    return 1 if detv > 0 else -1


def _fraction_det(rows):
    n = len(rows)
    mat = [row[:] for row in rows]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if mat[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            det = -det
        det *= mat[c][c]
        inv = 1 / mat[c][c]
        for r in range(c + 1, n):
            if mat[r][c]:
                f = mat[r][c] * inv
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[c])]
    return det


# ------------------------------------------------------------------ chambers


@dataclass(frozen=True)
class Chamber:
    """One sign pattern of the shifted facet inequalities."""

    signs: tuple[bool, ...]          # True: <a, v_F> >= -D_F holds
    rational_witness: tuple          # exact rational point (internal coords)
    lattice_witness: tuple | None    # integer point (internal coords) or None


def chambers(monoid: AffineMonoid, D: WeilDivisor) -> list[Chamber]:
    """All sign patterns that are realized by rational points, with exact
    integer-point existence decided per chamber."""
    out = []
    rank = monoid.rank
    for signs in itertools.product((True, False), repeat=monoid.facet_count):
        strict_ineqs = []
        closed_ineqs = []
        for f, keep in enumerate(signs):
            v = monoid.facet_normals[f]
            a = D.coeffs[f]
            if keep:
                strict_ineqs.append((v, a, False))
                closed_ineqs.append((v, a, False))
            else:
                neg = tuple(-x for x in v)
                strict_ineqs.append((neg, -a, True))
                closed_ineqs.append((neg, -a - 1, False))
        rat = polyhedra.rational_point(strict_ineqs, [], rank)
        if rat is None:
            continue
        lat = polyhedra.integer_point(closed_ineqs, [], rank)
        out.append(Chamber(signs=signs, rational_witness=rat,
                           lattice_witness=lat))
    return out


def chamber_of_point(monoid: AffineMonoid, D: WeilDivisor, u) -> tuple[bool, ...]:
    return tuple(monoid.pair(u, f) >= -D.coeffs[f]
                 for f in range(monoid.facet_count))


# --------------------------------------------------------------------- depth


def _present_faces(lattice: FaceLattice, signs) -> set[int]:
    return {idx for idx, face in enumerate(lattice.faces)
            if all(signs[f] for f in face.tight)}


def depth_profile(monoid: AffineMonoid, D: WeilDivisor,
                  lattice: FaceLattice | None = None):
    """Cohomology dimensions per realized chamber.

    Returns (chamber, dims) pairs for every chamber with a lattice witness.
    """
    if lattice is None:
        lattice = FaceLattice(monoid)
    result = []
    for chamber in chambers(monoid, D):
        if chamber.lattice_witness is None:
            continue
        present = _present_faces(lattice, chamber.signs)
        dims = lattice.degree_piece_cohomology(present)
        result.append((chamber, dims))
    return result


def depth(monoid: AffineMonoid, D: WeilDivisor,
          lattice: FaceLattice | None = None) -> int:
    profile = depth_profile(monoid, D, lattice)
    d = monoid.rank
    best = None
    top_seen = False
    for chamber, dims in profile:
        for i, dim_i in enumerate(dims):
            if dim_i:
                best = i if best is None else min(best, i)
                break
        if dims[d]:
            top_seen = True
    assert top_seen, "top local cohomology must not vanish"
    assert best is not None
    return best


def is_cm(monoid: AffineMonoid, D: WeilDivisor,
          lattice: FaceLattice | None = None) -> bool:
    return depth(monoid, D, lattice) == monoid.rank


def depth_report(monoid: AffineMonoid, D: WeilDivisor) -> dict:
    """JSON-ready depth report for one divisor."""
    lattice = FaceLattice(monoid)
    profile = depth_profile(monoid, D, lattice)
    d = monoid.rank
    value = depth(monoid, D, lattice)
    chamber, dims = next(
        (ch, dims) for ch, dims in profile
        if next((i for i, x in enumerate(dims) if x), None) == value)
    return {
        "divisor": list(D.coeffs),
        "depth": value,
        "cm": value == d,
        "witness_chamber": {
            "satisfied_facets": [f for f, s in enumerate(chamber.signs) if s],
            "lattice_witness": list(monoid.to_ambient(chamber.lattice_witness)),
            "cohomology_dims": dims,
        },
    }


def gorenstein(monoid: AffineMonoid) -> bool:
    """Canonical class trivial with a monomial interior witness at height 1."""
    target = [1] * monoid.facet_count
    sol = la.solve_integer(monoid.pairing_matrix(), target)
    if sol is None:
        return False
    u = tuple(int(x) for x in sol)
    return monoid.pairing_vector(u) == tuple(target)
