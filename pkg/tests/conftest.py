from __future__ import annotations

import pytest

from gormod import fields as fl
from gormod import findim as fd
from gormod.cones import AffineMonoid, from_ring_spec


@pytest.fixture(scope="session")
def octant():
    return AffineMonoid.from_rays([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


@pytest.fixture(scope="session")
def quadric():
    return AffineMonoid.from_rays([[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]])


@pytest.fixture(scope="session")
def veronese6():
    return from_ring_spec({
        "lattice_rank": 3,
        "rays": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        "congruence": {"weights": [1, 1, 1], "modulus": 6},
    })


@pytest.fixture(scope="session")
def veronese3():
    return from_ring_spec({
        "lattice_rank": 3,
        "rays": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        "congruence": {"weights": [1, 1, 1], "modulus": 3},
    })


@pytest.fixture(scope="session")
def third11():
    return AffineMonoid.from_rays([[1, 0], [1, 3]])


@pytest.fixture(scope="session")
def francia():
    return from_ring_spec({
        "lattice_rank": 4,
        "facet_normals": [[1, 0, 0, 0], [0, 1, 0, 0],
                          [0, 0, 1, 0], [0, 0, 0, 1]],
        "congruence": {"weights": [2, 1, -1, -1], "modulus": 0},
    })


@pytest.fixture(scope="session")
def char2_algebra():
    return fd.truncated_polynomial_algebra(fl.GF(2), [1, 0, 1],
                                           modulus=2, deg_x=1)


@pytest.fixture(scope="session")
def qx2_algebra():
    return fd.truncated_polynomial_algebra(fl.QQ(), [0, 0, 1],
                                           modulus=2, deg_x=1)


@pytest.fixture(scope="session")
def qx3_algebra():
    return fd.truncated_polynomial_algebra(fl.QQ(), [0, 0, 0, 1],
                                           modulus=3, deg_x=1)


@pytest.fixture(scope="session")
def mat2_algebra():
    return fd.matrix_algebra(fl.QQ(), 2)


@pytest.fixture(scope="session")
def triangular_algebra():
    return fd.upper_triangular_algebra(fl.QQ(), 2)
