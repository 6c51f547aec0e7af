import pytest

import numpy as np

import linalg
from fields import FieldSpec
from groebner import quotient_presentation
from koszul import (
    SUBSETS,
    homology_blocks,
    koszul_complex,
    unblocked_homology_dimensions,
    wedge_sign,
)
from polynomials import Ideal, parse_matrix


def complex_for(text, field):
    return koszul_complex(quotient_presentation(Ideal(field, tuple(parse_matrix(text, field)))))


def homology_dimensions(K):
    blocks = homology_blocks(K)
    return tuple(sum(b.dimension for b in blocks[j].values()) for j in range(4))


def test_subsets():
    assert [len(s) for s in SUBSETS] == [1, 3, 3, 1]
    assert SUBSETS[2] == ((0, 1), (0, 2), (1, 2))


@pytest.mark.parametrize(
    "S, T, sign",
    [((0,), (1,), 1), ((1,), (0,), -1), ((2,), (0, 1), 1), ((1,), (0, 2), -1), ((0, 1), (2,), 1)],
)
def test_wedge_sign(S, T, sign):
    assert wedge_sign(S, T) == sign


@pytest.mark.parametrize(
    "text, dims",
    [
        ("x,y,z", (1, 3, 3, 1)),
        ("x^2,y^2,z^2", (8, 24, 24, 8)),
        ("z^2,y^3,x*y^2,x^2*y,x^3", (12, 36, 36, 12)),
    ],
)
def test_chain_dimensions(gf3, text, dims):
    assert complex_for(text, gf3).dimensions() == dims


@pytest.mark.parametrize(
    "text, tor",
    [
        ("x,y,z", (1, 3, 3, 1)),
        ("x^2,y^2,z^2", (1, 3, 3, 1)),
        ("z^2,x*z,y^2,x*y,x^3", (1, 5, 6, 2)),
        ("x^2,x*y,y^2,x*z,y*z,z^2", (1, 6, 8, 3)),
    ],
)
def test_homology_dimensions(gf3, text, tor):
    K = complex_for(text, gf3)

    assert homology_dimensions(K) == tor
    assert unblocked_homology_dimensions(K) == tor


def test_homology_of_the_residue_field_sits_in_internal_degree_j(qq):
    blocks = homology_blocks(complex_for("x,y,z", qq))

    assert [sorted(blocks[j]) for j in range(4)] == [[0], [1], [2], [3]]


@pytest.mark.parametrize("characteristic", [0, 2, 3])
def test_square_zero(characteristic):
    field = FieldSpec(characteristic)
    K = complex_for("x^2+y*z,y^2-x*z,z^3,x*z^2", field)
    for t in K.internal_degrees():
        for j in (2, 3):
            product = linalg.matmul(field, K.differential(j, t), K.differential(j - 1, t))
            assert linalg.is_zero(product)


def test_representatives_are_cycles(gf3):
    K = complex_for("z^2,y^3,x*y^2,x^2*y,x^3", gf3)
    for j, blocks in homology_blocks(K).items():
        for t, block in blocks.items():
            boundary = linalg.matmul(gf3, block.representatives, K.differential(j, t))
            assert linalg.is_zero(boundary)
            assert block.coordinates(gf3, block.representatives).tolist() == np.eye(
                block.dimension, dtype=int
            ).tolist()


def test_coordinates_ignore_boundaries(gf3):
    K = complex_for("x^2,y^2,z^2", gf3)
    t = 2
    block = homology_blocks(K)[1][t]
    boundaries = linalg.matmul(gf3, linalg.as_matrix(gf3, [[1] * 3], 3), K.differential(2, t)[:3])
    shifted = linalg.normalize(gf3, block.representatives[:1] + boundaries)

    assert np.array_equal(
        block.coordinates(gf3, shifted), block.coordinates(gf3, block.representatives[:1])
    )
