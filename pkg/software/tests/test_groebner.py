import pytest

import itertools

import numpy as np

import linalg
from conftest import load_corpus
from errors import NotArtinianError
from fields import FieldSpec
from groebner import (
    codimension,
    codimension_of_monomials,
    coefficient_matrix,
    minimal_generators,
    multiply_rows,
    normal_form,
    quotient_presentation,
    reduced_groebner_basis,
    socle_dimension,
)
from polynomials import (
    HomogeneousPolynomial,
    Ideal,
    Monomial,
    monomials_of_degree,
    parse_matrix,
    random_homogeneous,
)


def ideal(text, field):
    return Ideal(field, tuple(parse_matrix(text, field)))


def degree_rank(I, d):
    """dim I_d, from the span of all multiples of the generators"""
    field = I.field
    blocks = [
        multiply_rows(field, coefficient_matrix(field, [g], g.degree), g.degree, d - g.degree)
        for g in I.generators
        if g.degree <= d
    ]
    if not blocks:
        return 0
    return linalg.rank(field, np.vstack(blocks))


@pytest.mark.parametrize(
    "text, hilbert",
    [
        ("x,y,z", (1,)),
        ("x^2,y^2,z^2", (1, 3, 3, 1)),
        ("z^2,y^3,x*y^2,x^2*y,x^3", (1, 3, 5, 3)),
        ("z^2,x*z,y^2,x*y,x^3", (1, 3, 2)),
    ],
)
def test_hilbert_functions(gf3, text, hilbert):
    Q = quotient_presentation(ideal(text, gf3))

    assert Q.hilbert_function == hilbert
    assert Q.total_dimension == sum(hilbert)
    assert Q.socle_degree == len(hilbert) - 1


def test_monomial_hilbert_functions_match_enumeration(gf3):
    rng = np.random.default_rng(2024)
    for _ in range(200):
        powers = rng.integers(1, 7, size=3)
        gens = [Monomial(*(int(powers[v]) if k == v else 0 for k in range(3))) for v in range(3)]
        for _ in range(int(rng.integers(0, 5))):
            e = rng.integers(0, 4, size=3)
            if 0 < e.sum() <= 6:
                gens.append(Monomial(*(int(v) for v in e)))
        I = Ideal(gf3, tuple(HomogeneousPolynomial.monomial(gf3, m) for m in gens))
        Q = quotient_presentation(I)

        top = max(m.degree for m in gens) * 3
        expected = [
            sum(1 for m in monomials_of_degree(d) if not any(g.divides(m) for g in gens))
            for d in range(top + 1)
        ]
        while expected and expected[-1] == 0:
            expected.pop()
        assert Q.hilbert_function == tuple(expected)


@pytest.mark.parametrize("characteristic", [0, 2, 3, 5])
def test_quotient_dimensions_match_linear_algebra(characteristic):
    field = FieldSpec(characteristic)
    rng = np.random.default_rng(characteristic + 100)
    checked = 0
    while checked < 15:
        degrees = rng.integers(2, 5, size=int(rng.integers(3, 6)))
        I = Ideal(field, tuple(random_homogeneous(field, int(d), 0, rng) for d in degrees))
        if codimension(I) != 3:
            continue
        Q = quotient_presentation(I)
        for d in range(Q.socle_degree + 2):
            assert Q.dimension(d) == len(monomials_of_degree(d)) - degree_rank(I, d)
        checked += 1


def test_groebner_basis_shape(gf3):
    rng = np.random.default_rng(17)
    for _ in range(20):
        I = Ideal(gf3, tuple(random_homogeneous(gf3, int(d), 2, rng) for d in (2, 2, 3, 3)))
        G = reduced_groebner_basis(I)
        lms = G.leading_monomials

        assert all(g.leading_coefficient == 1 for g in G)
        assert not any(a != b and a.divides(b) for a, b in itertools.product(lms, lms))
        assert all(normal_form(g, G).is_zero for g in I.generators)


@pytest.mark.parametrize("characteristic_fixture", ["gf3", "qq"])
def test_reduced_basis_ignores_order_and_scaling(request, characteristic_fixture):
    field = request.getfixturevalue(characteristic_fixture)
    rng = np.random.default_rng(31)
    for _ in range(15):
        gens = [random_homogeneous(field, int(d), 3, rng) for d in rng.integers(2, 4, size=4)]
        shuffled = [
            gens[int(i)].scale(field.random_element(rng, nonzero=True))
            for i in rng.permutation(len(gens))
        ]

        assert reduced_groebner_basis(Ideal(field, tuple(shuffled))) == reduced_groebner_basis(
            Ideal(field, tuple(gens))
        )


def test_normal_form_is_idempotent(gf3):
    rng = np.random.default_rng(8)
    for _ in range(15):
        I = Ideal(gf3, tuple(random_homogeneous(gf3, int(d), 2, rng) for d in (2, 2, 3)))
        G = reduced_groebner_basis(I)
        for d in range(1, 6):
            f = random_homogeneous(gf3, d, 0, rng)
            r = normal_form(f, G)

            assert normal_form(r, G) == r
            assert not any(m.divides(mono) for m in G.leading_monomials for mono, _ in r.terms)


def test_normal_form_matrix_agrees_with_normal_form(qq):
    I = ideal("x^2+y*z,y^2-x*z,z^3", qq)
    G = reduced_groebner_basis(I)
    Q = quotient_presentation(I)
    rng = np.random.default_rng(4)
    for d in range(1, Q.socle_degree + 2):
        f = random_homogeneous(qq, d, 0, rng)
        r = normal_form(f, G)
        expected = [0] * Q.dimension(d)
        for mono, c in r.terms:
            expected[Q.standard_index(d)[mono]] = c
        assert list(Q.reduce_vector(d, f.to_row())) == expected


def test_variable_matrices_match_multiplication_tensor(gf3):
    Q = quotient_presentation(ideal("z^2,y^3,x*y^2,x^2*y,x^3", gf3))
    for d in range(Q.socle_degree + 1):
        T = Q.multiplication_tensor(d, 1)
        for i in range(3):
            assert np.array_equal(T[:, i, :], Q.variable_matrix(i, d))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("x,y", 2),
        ("x^2,x*y", 1),
        ("x*y,x*z,y*z", 2),
        ("x^2,y^2,z^2", 3),
        ("x^2+y^2,x*y,z^3", 3),
    ],
)
def test_codimension(gf3, text, expected):
    assert codimension(ideal(text, gf3)) == expected


def test_codimension_of_zero_ideal(gf3):
    assert codimension(Ideal(gf3)) == 0
    assert codimension_of_monomials([]) == 0


def test_quotient_requires_codimension_3(gf3):
    with pytest.raises(NotArtinianError, match="not codimension 3"):
        quotient_presentation(ideal("x,y", gf3))


def test_minimal_generators_drop_redundancy(gf3):
    gens = minimal_generators(ideal("x^2,x*y,x^2+x*y,x^3,y^3", gf3))

    assert [g.to_text() for g in gens] == ["x*y", "x^2", "y^3"]


def test_minimal_generators_are_canonical(gf3):
    a = minimal_generators(ideal("x^2+y^2,y^2,z^2", gf3))
    b = minimal_generators(ideal("x^2,y^2-x^2,z^2+y^2", gf3))

    assert a == b


@pytest.mark.parametrize("row", load_corpus())
def test_corpus_generator_counts_and_types(gf3, row):
    m, n, _, _, _, _, gens = row
    I = ideal(gens, gf3)

    assert len(minimal_generators(I)) == m
    assert socle_dimension(quotient_presentation(I)) == n


@pytest.mark.parametrize("text, n", [("x^2,y^2,z^2", 1), ("z^2,x*z,y^2,x*y,x^3", 2), ("x,y,z", 1)])
def test_socle_dimension(gf3, text, n):
    assert socle_dimension(quotient_presentation(ideal(text, gf3))) == n
