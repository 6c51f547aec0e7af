"""Macaulay inverse systems: ideals built as annihilators of dual forms.

A dual form F is an ordinary `HomogeneousPolynomial` read in the divided-power variables X, Y, Z.
Polynomials act on it by contraction

    x^a y^b z^c o X^A Y^B Z^C = X^(A-a) Y^(B-b) Z^(C-c)   (zero unless A >= a, B >= b, C >= c)

which involves no factorials and so behaves the same in every characteristic.
"""

import logging

import numpy as np

import linalg
from errors import InternalInvariantError
from fields import FieldSpec
from groebner import multiply_rows, new_generators_in_degree, quotient_presentation, socle_dimension
from polynomials import HomogeneousPolynomial, Ideal, Monomial, monomial_index, monomials_of_degree

log = logging.getLogger(__name__)

# A dual form: a HomogeneousPolynomial in X, Y, Z
DualForm = HomogeneousPolynomial


def contract(mono: Monomial, F: DualForm) -> DualForm:
    """mono o F; the zero form of degree max(deg F - deg mono, 0) when nothing survives"""
    degree = F.degree - mono.degree
    if degree < 0:
        return HomogeneousPolynomial.zero(F.field, 0)
    terms = {m.quotient(mono): c for m, c in F.terms if mono.divides(m)}
    return HomogeneousPolynomial.from_dict(F.field, degree, terms)


def contract_polynomial(f: HomogeneousPolynomial, F: DualForm) -> DualForm:
    """f o F, extended bilinearly from `contract`"""
    field = F.field
    degree = F.degree - f.degree
    if degree < 0:
        return HomogeneousPolynomial.zero(field, 0)
    result = HomogeneousPolynomial.zero(field, degree)
    for mono, c in f.terms:
        result = result + contract(mono, F).scale(c)
    return result


def contraction_matrix(field: FieldSpec, d: int, forms) -> np.ndarray:
    """The map R_d -> (+)_j (dual degree deg F_j - d), u -> (u o F_j)_j, as a matrix acting on rows

    Row u, column w of the block for F_j holds the coefficient of F_j at u*w.
    """
    monos = monomials_of_degree(d)
    blocks = []
    for F in forms:
        e = F.degree - d
        if e < 0:
            continue
        index = monomial_index(F.degree)
        positions = np.array(
            [[index[u.times(w)] for w in monomials_of_degree(e)] for u in monos], dtype=np.int64
        )
        row = linalg.as_matrix(field, [F.to_row()], len(index))[0]
        blocks.append(row[positions])
    if not blocks:
        return linalg.zeros(field, (len(monos), 0))
    return np.hstack(blocks)


def annihilator_ideal(forms, field: FieldSpec) -> Ideal:
    """The ideal {f : f o F = 0 for every F in forms}, minimally generated

    I_d is the left kernel of `contraction_matrix` for d = 1 .. max deg F + 1; past that degree
    every form is killed, so the ideal is generated by then.

    @exception ValueError if forms is empty or contains a zero form
    @exception InternalInvariantError if a computed generator fails to kill one of the forms
    """
    forms = list(forms)
    if not forms:
        raise ValueError("At least one dual form is required")
    for F in forms:
        if F.is_zero:
            raise ValueError("Dual forms must be nonzero")
        if F.field != field:
            raise ValueError(f"Dual form {F} is not over {field.name}")

    top = max(F.degree for F in forms) + 1
    generators = []
    previous = None
    for d in range(1, top + 1):
        current = linalg.kernel(field, contraction_matrix(field, d, forms).T)
        lower = None
        if previous is not None and previous.shape[0]:
            lower = multiply_rows(field, previous, d - 1, 1)
        generators.extend(new_generators_in_degree(field, d, lower, current))
        previous = current
    for g in generators:
        if any(not contract_polynomial(g, F).is_zero for F in forms):
            raise InternalInvariantError(f"{g.to_text()} does not annihilate every dual form")
    log.debug(f"annihilator of {len(forms)} dual forms has {len(generators)} generators")
    return Ideal(field, tuple(generators))


def quotient_type(ideal: Ideal) -> int:
    """The type of R/I: the dimension of its socle, which is also the rank of the last module in a
    minimal free resolution

    @exception NotArtinianError if I does not have codimension 3
    """
    return socle_dimension(quotient_presentation(ideal))
