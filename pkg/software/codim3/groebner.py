"""Gröbner bases and the quotient ring R/I for homogeneous ideals of k[x, y, z].

The Buchberger loop is homogeneous: inputs and S-pairs are processed in ascending degree, so every
element added in degree d is final for degree d. Both of Buchberger's criteria are applied.

Everything degree-wise (minimal generators, normal-form matrices, the socle) is dense linear algebra
on the graded pieces, which are small for the ideals studied here.
"""

import heapq
import itertools
import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Tuple

import numpy as np

import linalg
from errors import InternalInvariantError, NotArtinianError
from fields import FieldSpec
from polynomials import (
    HomogeneousPolynomial,
    Ideal,
    Monomial,
    VARIABLES,
    monomial_index,
    monomials_of_degree,
)

log = logging.getLogger(__name__)

# Degree beyond which a computation is considered runaway
MAX_DEGREE = 64


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Gröbner basis for grevlex with x > y > z

    Elements are monic, sorted by (degree, leading monomial) ascending.
    """

    field: FieldSpec
    elements: Tuple[HomogeneousPolynomial, ...] = ()

    @property
    def leading_monomials(self):
        return [g.leading_monomial for g in self.elements]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


class _Element:
    """A monic basis element during the Buchberger loop"""

    __slots__ = ("lm", "degree", "terms")

    def __init__(self, degree: int, terms: dict):
        self.degree = degree
        self.terms = sorted(terms.items(), key=lambda t: t[0].sort_key(), reverse=True)
        self.lm = self.terms[0][0]


def _reduce(field: FieldSpec, degree: int, terms: dict, reducers) -> dict:
    """Fully reduce a homogeneous polynomial, given as {Monomial: value}, by monic reducers"""
    result = dict(terms)
    if not result:
        return result
    for mono in monomials_of_degree(degree):
        c = result.get(mono)
        if not c:
            continue
        for g in reducers:
            if g.lm.divides(mono):
                t = mono.quotient(g.lm)
                for gm, gc in g.terms:
                    key = gm.times(t)
                    v = field.sub(result.get(key, 0), field.mul(c, gc))
                    if v == 0:
                        result.pop(key, None)
                    else:
                        result[key] = v
                break
    return result


def _monic(field: FieldSpec, terms: dict) -> dict:
    lead = max(terms, key=Monomial.sort_key)
    inverse = field.inverse(terms[lead])
    return {m: field.mul(v, inverse) for m, v in terms.items()}


def _s_polynomial(field: FieldSpec, f: _Element, g: _Element, lcm: Monomial) -> dict:
    acc = {}
    tf = lcm.quotient(f.lm)
    for m, v in f.terms:
        acc[m.times(tf)] = v
    tg = lcm.quotient(g.lm)
    for m, v in g.terms:
        key = m.times(tg)
        value = field.sub(acc.get(key, 0), v)
        if value == 0:
            acc.pop(key, None)
        else:
            acc[key] = value
    return acc


def _chain_criterion(i: int, j: int, lcm: Monomial, basis, pending) -> bool:
    """Buchberger's second criterion: skip (i, j) if some k with lm_k | lcm(i, j) has both of its
    pairs with i and j already treated
    """
    for k, g in enumerate(basis):
        if k == i or k == j or not g.lm.divides(lcm):
            continue
        if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
            return True
    return False


def reduced_groebner_basis(ideal: Ideal) -> GroebnerBasis:
    """Compute the reduced Gröbner basis of a homogeneous ideal

    @exception InternalInvariantError if the computation passes MAX_DEGREE
    """
    field = ideal.field
    basis = []
    pending = set()
    counter = itertools.count()
    queue = []
    for g in ideal.generators:
        heapq.heappush(queue, (g.degree, next(counter), None, g.as_dict()))

    while queue:
        degree, _, pair, terms = heapq.heappop(queue)
        if degree > MAX_DEGREE:
            raise InternalInvariantError(f"Gröbner basis computation passed degree {MAX_DEGREE}")
        if pair is not None:
            pending.discard(pair)
            i, j = pair
            lcm = basis[i].lm.lcm(basis[j].lm)
            if basis[i].lm.is_coprime(basis[j].lm) or _chain_criterion(i, j, lcm, basis, pending):
                continue
            terms = _s_polynomial(field, basis[i], basis[j], lcm)
        h = _reduce(field, degree, terms, basis)
        if not h:
            continue
        new = _Element(degree, _monic(field, h))
        k = len(basis)
        basis.append(new)
        for i, g in enumerate(basis[:-1]):
            pending.add((i, k))
            heapq.heappush(queue, (g.lm.lcm(new.lm).degree, next(counter), (i, k), None))

    # drop elements whose leading monomial is divisible by another's, keeping the first of equals
    minimal = []
    for k, g in enumerate(basis):
        if not any(
            h.lm.divides(g.lm) and (h.lm != g.lm or i < k) for i, h in enumerate(basis) if i != k
        ):
            minimal.append(g)

    elements = []
    for g in minimal:
        others = [h for h in minimal if h is not g]
        reduced = _reduce(field, g.degree, dict(g.terms), others)
        elements.append(HomogeneousPolynomial.from_dict(field, g.degree, reduced))
    elements.sort(key=lambda g: g.leading_monomial.sort_key())
    log.debug(f"Gröbner basis with {len(elements)} elements from {len(basis)} candidates")
    return GroebnerBasis(field, tuple(elements))


def _reducers(G: GroebnerBasis):
    return [_Element(g.degree, g.as_dict()) for g in G.elements]


def normal_form(f: HomogeneousPolynomial, G: GroebnerBasis) -> HomogeneousPolynomial:
    """The unique representative of f modulo the ideal with no monomial in the leading term ideal"""
    reduced = _reduce(f.field, f.degree, f.as_dict(), _reducers(G))
    return HomogeneousPolynomial.from_dict(f.field, f.degree, reduced)


def codimension_of_monomials(monomials) -> int:
    """Codimension of the ideal generated by the given monomials

    The Krull dimension of R/(monomials) is the size of the largest set S of variables such that no
    monomial is supported inside S.
    """
    supports = [m.support() for m in monomials]
    if not supports:
        return 0
    for size in (3, 2, 1, 0):
        for subset in itertools.combinations(range(3), size):
            s = frozenset(subset)
            if not any(support <= s for support in supports):
                return 3 - size
    return 3


def codimension(ideal: Ideal) -> int:
    """3 minus the Krull dimension of R/I; the zero ideal has codimension 0"""
    if ideal.is_zero:
        return 0
    return codimension_of_monomials(reduced_groebner_basis(ideal).leading_monomials)


@dataclass(frozen=True)
class QuotientPresentation:
    """An artinian quotient R/I with its standard-monomial basis

    `standard_monomials[d]` lists, descending, the degree-d monomials outside the leading term
    ideal; the list ends at the socle degree (the last nonzero degree).
    """

    basis: GroebnerBasis
    standard_monomials: Tuple[Tuple[Monomial, ...], ...]
    _cache: dict = dataclass_field(default_factory=dict, compare=False, repr=False)

    @property
    def field(self) -> FieldSpec:
        return self.basis.field

    @property
    def hilbert_function(self) -> Tuple[int, ...]:
        return tuple(len(s) for s in self.standard_monomials)

    @property
    def total_dimension(self) -> int:
        return sum(self.hilbert_function)

    @property
    def socle_degree(self) -> int:
        return len(self.standard_monomials) - 1

    def dimension(self, d: int) -> int:
        if 0 <= d < len(self.standard_monomials):
            return len(self.standard_monomials[d])
        return 0

    def standard_index(self, d: int) -> dict:
        key = ("index", d)
        if key not in self._cache:
            monos = self.standard_monomials[d] if 0 <= d < len(self.standard_monomials) else ()
            self._cache[key] = {m: i for i, m in enumerate(monos)}
        return self._cache[key]

    def normal_form_matrix(self, d: int) -> np.ndarray:
        """Row k holds the coordinates of NF(monomials_of_degree(d)[k]) in the standard basis

        Monomials are processed in ascending order: a nonstandard monomial m = t * lm(g) reduces to
        -t * tail(g), whose monomials are all smaller than m and therefore already done.
        """
        key = ("nf", d)
        if key in self._cache:
            return self._cache[key]
        monos = monomials_of_degree(d)
        h = self.dimension(d)
        M = linalg.zeros(self.field, (len(monos), h))
        if h:
            index = monomial_index(d)
            standard = self.standard_index(d)
            for row in reversed(range(len(monos))):
                mono = monos[row]
                if mono in standard:
                    M[row, standard[mono]] = 1
                    continue
                g = next(g for g in self.basis.elements if g.leading_monomial.divides(mono))
                t = mono.quotient(g.leading_monomial)
                tail = g.terms[1:]
                if tail:
                    rows = [index[m.times(t)] for m, _ in tail]
                    coefficients = linalg.as_matrix(self.field, [[-v for _, v in tail]], len(tail))
                    M[row] = linalg.matmul(self.field, coefficients, M[rows])[0]
        self._cache[key] = M
        return M

    def reduce_vector(self, d: int, coefficients) -> np.ndarray:
        """Standard-basis coordinates of a degree-d form given by its coefficient vector"""
        row = linalg.as_matrix(self.field, [coefficients], len(monomials_of_degree(d)))
        return linalg.matmul(self.field, row, self.normal_form_matrix(d))[0]

    def variable_matrix(self, i: int, d: int) -> np.ndarray:
        """Multiplication by the i-th variable from degree d to degree d + 1, shape (h_d, h_{d+1})"""
        key = ("var", i, d)
        if key not in self._cache:
            monos = self.standard_monomials[d] if 0 <= d < len(self.standard_monomials) else ()
            index = monomial_index(d + 1)
            rows = [index[m.times(VARIABLES[i])] for m in monos]
            self._cache[key] = self.normal_form_matrix(d + 1)[rows].reshape(
                len(rows), self.dimension(d + 1)
            )
        return self._cache[key]

    def multiplication_tensor(self, d1: int, d2: int) -> np.ndarray:
        """T[a, b] = coordinates of NF(u_a * v_b) for standard monomials u_a of degree d1 and v_b
        of degree d2; shape (h_d1, h_d2, h_{d1+d2})
        """
        key = ("mul", d1, d2)
        if key not in self._cache:
            h1, h2, h12 = self.dimension(d1), self.dimension(d2), self.dimension(d1 + d2)
            if h1 and h2 and h12:
                index = monomial_index(d1 + d2)
                rows = np.array(
                    [
                        [index[u.times(v)] for v in self.standard_monomials[d2]]
                        for u in self.standard_monomials[d1]
                    ]
                )
                tensor = self.normal_form_matrix(d1 + d2)[rows]
            else:
                tensor = linalg.zeros(self.field, (h1, h2, h12))
            self._cache[key] = tensor
        return self._cache[key]


def quotient_presentation(ideal: Ideal) -> QuotientPresentation:
    """Standard monomials and Hilbert function of R/I

    @exception NotArtinianError if I does not have codimension 3
    """
    G = reduced_groebner_basis(ideal)
    lms = G.leading_monomials
    if codimension_of_monomials(lms) < 3:
        raise NotArtinianError("not codimension 3")
    standard = []
    for d in range(MAX_DEGREE + 1):
        monos = tuple(m for m in monomials_of_degree(d) if not any(lm.divides(m) for lm in lms))
        if not monos:
            break
        standard.append(monos)
    else:
        raise InternalInvariantError(f"Quotient has standard monomials past degree {MAX_DEGREE}")
    return QuotientPresentation(G, tuple(standard))


def coefficient_matrix(field: FieldSpec, polynomials, degree: int) -> np.ndarray:
    """Coefficient rows of degree-d forms over `monomials_of_degree(d)`"""
    return linalg.as_matrix(
        field, [f.to_row() for f in polynomials], len(monomials_of_degree(degree))
    )


def multiply_rows(field: FieldSpec, rows: np.ndarray, degree: int, shift: int) -> np.ndarray:
    """All products of the given degree-d forms (as coefficient rows) with the monomials of degree
    `shift`, as coefficient rows in degree d + shift
    """
    source = monomials_of_degree(degree)
    target = monomial_index(degree + shift)
    multipliers = monomials_of_degree(shift)
    n = rows.shape[0]
    out = linalg.zeros(field, (n * len(multipliers), len(target)))
    for k, t in enumerate(multipliers):
        columns = [target[s.times(t)] for s in source]
        out[k * n : (k + 1) * n, columns] = rows
    return out


def new_generators_in_degree(field: FieldSpec, degree: int, lower, current) -> list:
    """Minimal generators contributed in one degree

    @param lower  Rows spanning the part of I_d generated in lower degrees, or None
    @param current  Rows which together with `lower` span I_d

    @return  Canonical representatives: the reduced echelon basis of `current` modulo `lower`,
             ordered by ascending leading monomial
    """
    if current is None or current.shape[0] == 0:
        return []
    if lower is not None and lower.shape[0]:
        E, pivots = linalg.rref(field, lower)
        current = linalg.reduce(field, current, E, pivots)
    R, _ = linalg.rref(field, current)
    return [HomogeneousPolynomial.from_row(field, degree, row) for row in reversed(R)]


def minimal_generators(ideal: Ideal) -> list:
    """A minimal homogeneous generating set, ascending by degree then leading monomial

    In each degree d the generators are a basis of I_d modulo the span of the multiples of lower
    degree generators, so the count equals dim I/mI.
    """
    field = ideal.field
    gens = list(ideal.generators)
    result = []
    for d in sorted({g.degree for g in gens}):
        lower = [
            multiply_rows(field, coefficient_matrix(field, [g], g.degree), g.degree, d - g.degree)
            for g in gens
            if g.degree < d
        ]
        lower = np.vstack(lower) if lower else None
        current = coefficient_matrix(field, [g for g in gens if g.degree == d], d)
        result.extend(new_generators_in_degree(field, d, lower, current))
    return result


def socle_dimension(Q: QuotientPresentation) -> int:
    """dim {v in R/I : xv = yv = zv = 0}, degree by degree"""
    total = 0
    for d in range(Q.socle_degree + 1):
        action = np.hstack([Q.variable_matrix(i, d) for i in range(3)])
        total += Q.dimension(d) - linalg.rank(Q.field, action)
    return total
