import pytest

from fractions import Fraction

import numpy as np

import linalg
from fields import FieldSpec


def random_matrix(field, rng, rows, cols, rank=None):
    """A random matrix, optionally a product of two thin factors of the given rank"""
    p = field.characteristic or 7
    if rank is None:
        values = rng.integers(-p, p, size=(rows, cols))
    else:
        values = rng.integers(-3, 4, size=(rows, rank)) @ rng.integers(-3, 4, size=(rank, cols))
    return linalg.as_matrix(field, values.tolist(), cols)


def test_rref_gf3(gf3):
    A = linalg.as_matrix(gf3, [[1, 2, 0], [2, 1, 0], [0, 0, 1]], 3)

    R, pivots = linalg.rref(gf3, A)

    assert pivots == [0, 2]
    assert R.tolist() == [[1, 2, 0], [0, 0, 1]]


def test_rref_rational(qq):
    A = linalg.as_matrix(qq, [[2, 4, 6], [1, 1, 1]], 3)

    R, pivots = linalg.rref(qq, A)

    assert pivots == [0, 1]
    assert R.tolist() == [[1, 0, -1], [0, 1, 2]]
    assert all(isinstance(v, Fraction) for v in R.flat)


def test_rref_of_empty(gf3):
    R, pivots = linalg.rref(gf3, linalg.zeros(gf3, (0, 4)))

    assert R.shape == (0, 4)
    assert pivots == []


def test_rref_rejects_tensors(gf3):
    with pytest.raises(ValueError):
        linalg.rref(gf3, linalg.zeros(gf3, (2, 2, 2)))


@pytest.mark.parametrize("characteristic", [0, 2, 3, 32003])
def test_kernel(characteristic):
    field = FieldSpec(characteristic)
    rng = np.random.default_rng(characteristic)
    for rank in range(0, 5):
        A = random_matrix(field, rng, 5, 7, rank=rank if rank else None)
        K = linalg.kernel(field, A)
        r = linalg.rank(field, A)

        assert K.shape == (7 - r, 7)
        assert linalg.is_zero(linalg.matmul(field, A, K.T))
        assert linalg.rank(field, K) == 7 - r


def test_thin_products_have_bounded_rank(gf3, qq):
    rng = np.random.default_rng(5)
    for field in (gf3, qq):
        for rank in (1, 2, 3):
            assert linalg.rank(field, random_matrix(field, rng, 6, 6, rank=rank)) <= rank


def test_reduce_depends_only_on_class(gf3):
    rng = np.random.default_rng(9)
    E, pivots = linalg.rref(gf3, random_matrix(gf3, rng, 3, 6))
    v = random_matrix(gf3, rng, 1, 6)
    w = linalg.normalize(gf3, v + linalg.matmul(gf3, random_matrix(gf3, rng, 1, E.shape[0]), E))

    assert np.array_equal(linalg.reduce(gf3, v, E, pivots), linalg.reduce(gf3, w, E, pivots))
    assert linalg.is_zero(linalg.reduce(gf3, v, E, pivots)[:, pivots])


def test_empty_products(gf3):
    A = linalg.zeros(gf3, (3, 0))
    B = linalg.zeros(gf3, (0, 4))

    assert linalg.matmul(gf3, A, B).shape == (3, 4)
    C = linalg.tensordot(gf3, linalg.zeros(gf3, (2, 0)), linalg.zeros(gf3, (0, 3, 4)), ([1], [0]))

    assert C.shape == (2, 3, 4)


def test_large_prime_uses_python_ints():
    field = FieldSpec(2**31 - 1)
    A = linalg.as_matrix(field, [[2**30, 3], [5, 2**30 + 1]], 2)

    assert A.dtype == object
    assert linalg.rank(field, A) == 2
