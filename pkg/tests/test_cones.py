from __future__ import annotations

import itertools
import random

import pytest

from gormod import intlinalg as la
from gormod.cones import AffineMonoid, from_ring_spec, divisor_from_spec
from gormod.divisors import principal_witness
from gormod.errors import NotFullDimensional, NotPointed, ParseError


def incidence_normals(rays, rank):
    """Independent oracle for the dual description: candidate normals from
    (rank-1)-subsets of rays, kept when all rays sit on one side."""
    out = set()
    for subset in itertools.combinations(rays, rank - 1):
        M = la.intmat(list(subset)) if subset else None
        if subset and la.rank(M) != rank - 1:
            continue
        ker = la.kernel_basis(M) if subset else la.identity(rank)
        if ker.shape[1] != 1:
            continue
        v = la.primitive(tuple(int(x) for x in ker[:, 0]))
        for cand in (v, tuple(-x for x in v)):
            if all(sum(a * b for a, b in zip(r, cand)) >= 0 for r in rays):
                tight = [r for r in rays
                         if sum(a * b for a, b in zip(r, cand)) == 0]
                if la.rank(la.intmat(tight)) == rank - 1:
                    out.add(cand)
    return sorted(out)


def test_from_rays_octant(octant):
    assert octant.facet_normals == ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def test_from_rays_square_cone(quadric):
    expected = sorted([(1, 0, 0), (0, 1, 0), (-1, 0, 1), (0, -1, 1)])
    assert list(quadric.facet_normals) == expected
    # cross-check against the vertex-facet incidence oracle
    assert incidence_normals(quadric.rays_internal, 3) == expected


def test_from_rays_two_dim():
    m = AffineMonoid.from_rays([[1, 0], [1, 2]])
    assert sorted(m.facet_normals) == sorted([(0, 1), (2, -1)])


def test_duality_roundtrip(quadric, octant):
    for monoid in (quadric, octant):
        again = AffineMonoid.from_rays(monoid.rays_ambient())
        assert again.facet_normals == monoid.facet_normals
        assert again.rays_internal == monoid.rays_internal


def test_from_rays_errors():
    with pytest.raises(NotPointed):
        AffineMonoid.from_rays([[1, 0], [-1, 0], [0, 1], [0, -1]])
    with pytest.raises(NotFullDimensional):
        AffineMonoid.from_rays([[1, 0], [2, 0]])


def test_from_normals_validation():
    with pytest.raises(ParseError):
        AffineMonoid.from_normals([[1, 0], [1, 0]])
    with pytest.raises(NotPointed):
        AffineMonoid.from_normals([[1, 0]])
    # redundant inequality is rejected
    with pytest.raises(ParseError):
        AffineMonoid.from_normals([[1, 0], [0, 1], [1, 1]])


def test_hilbert_basis_examples(octant, quadric):
    assert octant.hilbert_basis() == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert quadric.hilbert_basis() == [(0, 0, 1), (0, 1, 1), (1, 0, 1),
                                       (1, 1, 1)]
    m = AffineMonoid.from_rays([[1, 0], [1, 2]])
    assert m.hilbert_basis() == [(1, 0), (1, 1), (1, 2)]


def test_hilbert_basis_veronese(veronese6):
    hb = veronese6.hilbert_basis()
    # all monomials of total degree six in three variables
    assert len(hb) == 28
    assert all(sum(m) == 6 and all(x >= 0 for x in m) for m in hb)


def test_class_groups(octant, quadric, veronese6):
    assert octant.class_group()[0].describe() == "trivial"
    assert quadric.class_group()[0].describe() == "Z"
    assert veronese6.class_group()[0].describe() == "Z_6"


def test_canonical_divisor_examples(octant, quadric, francia):
    K = octant.canonical_divisor()
    assert K.coeffs == (-1, -1, -1)
    assert octant.module_generators(K) == [(1, 1, 1)]
    KQ = quadric.canonical_divisor()
    assert quadric.divisor_class(KQ).is_zero()
    # the monomial witness: <m, v_F> = -1 on all four facets
    assert principal_witness(quadric, KQ) == (-1, -1, -2)
    KF = francia.canonical_divisor()
    cls = francia.divisor_class(KF)
    assert cls.order() is None
    assert tuple(abs(x) for x in cls.free) == (1,)
    # the class map is (a, b, c, d) -> +-(2a + b - c - d)
    sign = cls.free[0] // (2 * (-1) + (-1) - (-1) - (-1))
    for coeffs in itertools.product(range(-2, 3), repeat=4):
        D = francia.divisor(coeffs)
        a, b, c, d = coeffs
        assert francia.divisor_class(D).free == (sign * (2 * a + b - c - d),)


def test_divisorial_points_examples(octant, quadric, veronese6):
    assert (0, 0, 0) in octant.monoid_points(2)
    D1 = quadric.divisor([0, 0, 0, 0])
    # choose the facet with normal (1, 0, 0): spec coordinates m1 >= -1
    idx = quadric.facet_normals.index((1, 0, 0))
    coeffs = [0, 0, 0, 0]
    coeffs[idx] = 1
    pts = quadric.divisorial_points(quadric.divisor(coeffs), 3)
    assert (-1, 0, 0) in pts
    K = veronese6.canonical_divisor()
    assert (1, 1, 4) in veronese6.divisorial_points(K, 6)


def test_module_generators_quadric(quadric):
    idx = quadric.facet_normals.index((1, 0, 0))
    coeffs = [0] * 4
    coeffs[idx] = 1
    D1 = quadric.divisor(coeffs)
    assert sorted(quadric.module_generators(D1)) == [(-1, 0, 0), (0, 0, 0)]
    assert sorted(quadric.module_generators(2 * D1)) == \
        [(-2, 0, 0), (-1, 0, 0), (0, 0, 0)]
    assert quadric.module_generators(quadric.zero_divisor()) == [(0, 0, 0)]


def test_divisorial_superadditivity(quadric):
    rng = random.Random(3)
    for _ in range(8):
        D = quadric.divisor([rng.randint(-2, 2) for _ in range(4)])
        E = quadric.divisor([rng.randint(-2, 2) for _ in range(4)])
        box = 4
        pd = quadric.divisorial_points(D, box)
        pe = quadric.divisorial_points(E, box)
        target = D + E
        for a in pd[:20]:
            for b in pe[:20]:
                s = tuple(x + y for x, y in zip(a, b))
                assert quadric.divisorial_contains(target, s)


def test_principal_divisors_are_trivial(quadric, veronese6):
    for monoid in (quadric, veronese6):
        for m in monoid.lattice_points_in_box(2)[:40]:
            D = monoid.principal_divisor(m)
            assert monoid.divisor_class(D).is_zero()


def test_div_map_additivity(quadric):
    rng = random.Random(5)
    group, div_map = quadric.class_group()
    for _ in range(20):
        a = quadric.divisor([rng.randint(-3, 3) for _ in range(4)])
        b = quadric.divisor([rng.randint(-3, 3) for _ in range(4)])
        assert (div_map(a) + div_map(b)).key() == div_map(a + b).key()


def test_class_equality_iff_principal_shift(quadric):
    idx = quadric.facet_normals.index((1, 0, 0))
    coeffs = [0] * 4
    coeffs[idx] = 1
    D1 = quadric.divisor(coeffs)
    m = (1, 0, 1)
    shifted = D1 + quadric.principal_divisor(m)
    assert quadric.divisor_class(D1).key() == \
        quadric.divisor_class(shifted).key()
    w = principal_witness(quadric, shifted - D1)
    assert w == m
    # different classes admit no witness
    assert quadric.divisor_class(D1).key() != \
        quadric.divisor_class(2 * D1).key()
    assert principal_witness(quadric, (2 * D1) - D1) is None
    # and the point sets are genuinely shift-equivalent in the first case
    box = 5
    pts_d = quadric.divisorial_points(D1, box)
    for p in quadric.divisorial_points(shifted, box - 2):
        q = tuple(x + y for x, y in zip(p, m))
        assert quadric.divisorial_contains(D1, q)


def test_ring_spec_roundtrip(quadric):
    spec = {"lattice_rank": 3,
            "rays": [[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]]}
    m = from_ring_spec(spec)
    assert m.facet_normals == quadric.facet_normals
    assert m.ring_spec() == spec
    D = divisor_from_spec(m, {"coeffs": [1, 0, 0, 0]})
    assert D.coeffs == (1, 0, 0, 0)
    with pytest.raises(ParseError):
        from_ring_spec({"lattice_rank": 2})
    with pytest.raises(ParseError):
        from_ring_spec({"lattice_rank": 2, "rays": [[1, 0]],
                        "facet_normals": [[1, 0]]})
    with pytest.raises(ParseError):
        divisor_from_spec(m, {"coeffs": [1, 2]})


def test_congruence_lattice_membership(veronese6, francia):
    assert veronese6.contains((2, 2, 2))
    assert not veronese6.contains((1, 1, 1))
    assert veronese6.from_ambient((1, 1, 1)) is None
    assert francia.contains((1, 0, 1, 1))
    assert not francia.contains((1, 0, 0, 1))
    assert francia.hilbert_basis() == [(0, 1, 0, 1), (0, 1, 1, 0),
                                       (1, 0, 0, 2), (1, 0, 1, 1),
                                       (1, 0, 2, 0)]
