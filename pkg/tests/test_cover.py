from __future__ import annotations

import dataclasses
from fractions import Fraction

import pytest

from gormod import cover as cv
from gormod.cones import AffineMonoid
from gormod.errors import NotQGorenstein


@pytest.fixture(scope="module")
def quadric_cover(quadric):
    return cv.build_cover(quadric)


@pytest.fixture(scope="module")
def veronese_cover(veronese6):
    return cv.build_cover(veronese6)


@pytest.fixture(scope="module")
def third_cover(third11):
    return cv.build_cover(third11)


def test_build_cover_values(quadric_cover, veronese_cover, third_cover):
    assert quadric_cover.index == 1
    assert quadric_cover.m_q == (-1, -1, -2)
    assert veronese_cover.index == 2
    assert veronese_cover.m_q == (-2, -2, -2)
    assert third_cover.index == 3
    assert third_cover.m_q == (-2, -3)


def test_build_cover_rejects_nontorsion(francia):
    with pytest.raises(NotQGorenstein):
        cv.build_cover(francia)


def test_trivialization_shifts_piece(veronese_cover):
    # m_q + p(nK) = p(0) on a box
    cov = veronese_cover
    base = cov.base
    n = cov.index
    nK = n * cov.K
    for m in base.divisorial_points(nK, 6):
        shifted = tuple(a + b for a, b in zip(m, cov.m_q))
        assert base.contains(shifted)
    for m in base.monoid_points(4):
        unshifted = tuple(a - b for a, b in zip(m, cov.m_q))
        assert base.divisorial_contains(nK, unshifted)


def test_multiply(veronese_cover):
    cov = veronese_cover
    x0 = cv.CoverElement(cov, 0, (2, 2, 2))
    y0 = cv.CoverElement(cov, 0, (6, 0, 0))
    z = cv.multiply(x0, y0)
    assert (z.degree, z.point) == (0, (8, 2, 2))
    x1 = cv.CoverElement(cov, 1, (1, 1, 4))
    z = cv.multiply(x0, x1)
    assert (z.degree, z.point) == (1, (3, 3, 6))  # no carry below the index
    y1 = cv.CoverElement(cov, 1, (4, 1, 1))
    z = cv.multiply(x1, y1)
    assert (z.degree, z.point) == (0, (3, 0, 3))


def test_multiply_unital_and_degree_additive(veronese_cover):
    cov = veronese_cover
    one = cv.unit(cov)
    for i in range(cov.index):
        for p in cv.sample_piece_points(cov, i, 3):
            x = cv.CoverElement(cov, i, p)
            left = cv.multiply(one, x)
            right = cv.multiply(x, one)
            assert (left.degree, left.point) == (i, p)
            assert (right.degree, right.point) == (i, p)
    for i in range(cov.index):
        for j in range(cov.index):
            a = cv.CoverElement(cov, i, cv.sample_piece_points(cov, i, 1)[0])
            b = cv.CoverElement(cov, j, cv.sample_piece_points(cov, j, 1)[0])
            assert cv.multiply(a, b).degree == (i + j) % cov.index


def test_cocycle(quadric_cover, veronese_cover, third_cover):
    assert cv.check_cocycle(quadric_cover) == (True, None)
    assert cv.check_cocycle(veronese_cover) == (True, None)
    assert cv.check_cocycle(third_cover) == (True, None)


def test_cocycle_corrupted(veronese_cover):
    cov = veronese_cover
    bad = cv.GradedCover(base=cov.base, K=cov.K, index=cov.index,
                         m_q=(cov.m_q[0] + 1,) + cov.m_q[1:])
    ok, witness = cv.check_cocycle(bad)
    assert not ok and witness is not None


def test_strong_grading(quadric_cover, veronese_cover, third_cover):
    assert cv.check_strong_grading(quadric_cover)
    assert cv.check_strong_grading(veronese_cover)
    assert cv.check_strong_grading(third_cover)


def test_strong_grading_fails_with_zero_piece():
    halfline = AffineMonoid.from_rays([[1]])
    patho = cv.GradedCover(base=halfline, K=halfline.canonical_divisor(),
                           index=2, m_q=(-2,),
                           piece_divisors=(halfline.zero_divisor(), None))
    assert cv.check_strong_grading(patho, box=8) is False


def test_cover_as_monoid_quadric(quadric, quadric_cover):
    cm = cv.cover_as_monoid(quadric_cover)
    T = cv.find_monoid_isomorphism(cm.monoid, quadric)
    assert T is not None


def test_cover_as_monoid_veronese(veronese_cover, veronese3):
    cm = cv.cover_as_monoid(veronese_cover)
    T = cv.find_monoid_isomorphism(cm.monoid, veronese3)
    assert T is not None


def test_cover_as_monoid_third(third_cover):
    cm = cv.cover_as_monoid(third_cover)
    plane = AffineMonoid.from_rays([[1, 0], [0, 1]])
    assert cv.find_monoid_isomorphism(cm.monoid, plane) is not None


def test_cover_monoid_pieces_and_multiplication(veronese_cover, veronese6):
    cm = cv.cover_as_monoid(veronese_cover)
    pts = cm.monoid.monoid_points(4)
    for p in pts:
        k, m = cm.representative(p)
        assert cm.embed(k, m) == p
        assert veronese6.divisorial_contains(veronese_cover.piece(k), m)
    # degree-0 piece is the base ring
    deg0 = sorted(cm.representative(p)[1] for p in pts if cm.degree_of(p) == 0)
    base_pts = [m for m in veronese6.monoid_points(8)
                if cm.embed(0, m) in set(pts)]
    assert set(deg0) <= set(veronese6.monoid_points(16))
    # multiplication agrees with the cover product
    sample = cv.sample_piece_points(veronese_cover, 1, 4)
    for a in sample:
        for b in sample:
            x = cv.CoverElement(veronese_cover, 1, a)
            y = cv.CoverElement(veronese_cover, 1, b)
            z = cv.multiply(x, y)
            lhs = tuple(p + q for p, q in zip(cm.embed(1, a), cm.embed(1, b)))
            assert lhs == cm.embed(z.degree, z.point)


def test_cover_monoid_saturated(veronese_cover):
    # every cone point in a box decomposes into the Hilbert basis
    cm = cv.cover_as_monoid(veronese_cover)
    hb = set(cm.monoid.hilbert_basis())
    memo = {}

    def decomposes(pt):
        if not any(pt):
            return True
        if pt in memo:
            return memo[pt]
        memo[pt] = False
        for h in hb:
            rest = tuple(a - b for a, b in zip(pt, h))
            if cm.monoid.contains(rest) and decomposes(rest):
                memo[pt] = True
                break
        return memo[pt]

    for pt in cm.monoid.monoid_points(3):
        assert decomposes(pt)


def test_piece_classes(veronese_cover, veronese6):
    K_class = veronese6.divisor_class(veronese_cover.K)
    for i in range(veronese_cover.index):
        piece_class = veronese6.divisor_class(veronese_cover.piece(i))
        assert piece_class.key() == (i * K_class).key()


def test_gorenstein_cover(quadric_cover, veronese_cover, third_cover):
    assert cv.is_gorenstein_cover(quadric_cover)
    assert cv.is_gorenstein_cover(veronese_cover)
    assert cv.is_gorenstein_cover(third_cover)


def test_q_change(veronese_cover):
    ident = cv.q_change_iso(veronese_cover, Fraction(1))
    assert ident["verified"] and ident["is_automorphism"]
    two = cv.q_change_iso(veronese_cover, Fraction(2))
    assert two["verified"] and not two["is_automorphism"]
    minus = cv.q_change_iso(veronese_cover, Fraction(-1))
    assert minus["verified"] and minus["is_automorphism"]
    with pytest.raises(ValueError):
        cv.q_change_iso(veronese_cover, Fraction(0))


def test_hom_pieces(quadric_cover, veronese_cover, third_cover):
    assert cv.hom_S_Si_check(quadric_cover, box=6)
    assert cv.hom_S_Si_check(veronese_cover, box=6)
    assert cv.hom_S_Si_check(third_cover, box=8)


def test_shifted_canonical_representative_gives_isomorphic_cover(third11):
    # replacing K by K + div(x^m) translates every piece; the cover
    # monoids are unimodularly isomorphic
    cov = cv.build_cover(third11)
    m = (1, 1)
    principal = third11.principal_divisor(m)
    K2 = cov.K + principal
    pieces = tuple(i * K2 for i in range(cov.index))
    mq2 = tuple(a + cov.index * b for a, b in zip(cov.m_q, m))
    cov2 = cv.GradedCover(base=third11, K=K2, index=cov.index, m_q=mq2,
                          piece_divisors=pieces)
    assert cv.check_cocycle(cov2) == (True, None)
    cm1 = cv.cover_as_monoid(cov)
    cm2 = cv.cover_as_monoid(cov2)
    assert cv.find_monoid_isomorphism(cm1.monoid, cm2.monoid) is not None
