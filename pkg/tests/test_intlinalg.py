from __future__ import annotations

import itertools
import random
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gormod import intlinalg as la


def gcd_of_minors(A, k):
    """Brute-force gcd of all k x k minors (the classical SNF oracle)."""
    m, n = A.shape
    g = 0
    for rows in itertools.combinations(range(m), k):
        for cols in itertools.combinations(range(n), k):
            minor = la.intmat([[A[r][c] for c in cols] for r in rows])
            g = gcd(g, abs(la.det(minor)))
    return g


def snf_ok(A):
    U, D, V = la.smith_normal_form(A)
    assert (U @ A @ V == D).all()
    assert abs(la.det(U)) == 1
    assert abs(la.det(V)) == 1
    diag = la.diagonal_of(D)
    for a, b in zip(diag, diag[1:]):
        if a == 0:
            assert b == 0
        else:
            assert b % a == 0
    # off-diagonal zero
    for i in range(D.shape[0]):
        for j in range(D.shape[1]):
            if i != j:
                assert D[i][j] == 0
    prod = 1
    for k, d in enumerate(diag, start=1):
        prod *= d
        assert prod == gcd_of_minors(A, k) or (prod == 0 and
                                               gcd_of_minors(A, k) == 0)
    return diag


def test_snf_identity():
    diag = snf_ok(la.identity(3))
    assert diag == [1, 1, 1]


def test_snf_examples():
    assert snf_ok(la.intmat([[2, 4], [6, 8]])) == [2, 4]
    assert snf_ok(la.intmat([[6, 0], [0, 10]])) == [2, 30]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4),
                min_size=4, max_size=4))
def test_snf_random_properties(rows):
    snf_ok(la.intmat(rows))


def test_cokernel_cyclic():
    G = la.cokernel(la.intmat([[6]]))
    assert G.describe() == "Z_6"
    assert G.free_rank == 0 and G.invariant_factors == (6,)


def test_cokernel_quadric_facet_map():
    # rows pair lattice points with the four facet normals of the cone over
    # the unit square
    A = la.intmat([[1, 0, 0], [0, 1, 0], [-1, 0, 1], [0, -1, 1]])
    G = la.cokernel(A)
    assert G.free_rank == 1 and G.invariant_factors == ()


def test_cokernel_veronese_pairing():
    A = la.intmat([[1, 0, 0], [-1, 1, 0], [0, -1, 6]])
    G = la.cokernel(A)
    assert G.describe() == "Z_6"
    U, D, V = la.smith_normal_form(A)
    assert la.diagonal_of(D) == [1, 1, 6]


def test_cokernel_invariance_under_unimodular_changes():
    rng = random.Random(7)
    A = la.intmat([[2, 0], [0, 8], [4, 4]])
    base = la.cokernel(A)
    for _ in range(10):
        P = _random_unimodular(rng, 3)
        Q = _random_unimodular(rng, 2)
        G = la.cokernel(P @ A @ Q)
        assert (G.free_rank, G.invariant_factors) == \
            (base.free_rank, base.invariant_factors)


def _random_unimodular(rng, n):
    M = la.identity(n)
    for _ in range(6):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            M[i, :] += rng.randint(-2, 2) * M[j, :]
    return M


def test_element_order_examples():
    Z6 = la.cokernel(la.intmat([[6]]))
    three = Z6.element([3])
    assert la.element_order(three, Z6) == 2
    assert Z6.element([1]).order() == 6
    assert Z6.element([0]).order() == 1


def test_element_order_times_element_is_zero():
    G = la.cokernel(la.intmat([[4, 0], [0, 10], [0, 0]]))
    rng = random.Random(11)
    for _ in range(25):
        g = G.element([rng.randint(-9, 9) for _ in range(3)])
        n = g.order()
        if n is not None:
            assert (n * g).is_zero()
        else:
            assert any(g.free)


def test_group_element_arithmetic():
    G = la.cokernel(la.intmat([[4]]))
    a, b = G.element([3]), G.element([2])
    assert (a + b).torsion == (1,)
    assert (a - b).torsion == (1,)
    assert (-a).torsion == (1,)
    assert (2 * a).torsion == (2,)


def test_solve_and_kernel():
    A = la.intmat([[2, 0, 1], [0, 3, 1]])
    x = la.solve_integer(A, [4, 6])
    assert x is not None and ((A @ x) == la.intvec([4, 6])).all()
    assert la.solve_integer(la.intmat([[2]]), [3]) is None
    K = la.kernel_basis(A)
    assert K.shape[1] == 1
    assert (A @ K[:, 0] == la.intvec([0, 0])).all()


def test_inverse_unimodular():
    U = la.intmat([[1, 2], [1, 3]])
    Uinv = la.inverse_unimodular(U)
    assert (U @ Uinv == la.identity(2)).all()
    with pytest.raises(ValueError):
        la.inverse_unimodular(la.intmat([[2, 0], [0, 1]]))
