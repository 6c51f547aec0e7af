"""The Koszul complex K(x, y, z) tensored with an artinian quotient R/I, and its homology.

K_j has basis u (x) e_S with u a standard monomial and S a j-subset of {x, y, z}. The differential
sends u (x) e_S to sum_k (-1)^k NF(x_{S[k]} u) (x) e_{S minus S[k]} (k counted from 0) and preserves
the internal degree deg u + |S|, so the complex splits into finite blocks K_j^t, one per internal
degree t, each an independent small linear-algebra problem.

Inside a block, a vector is the concatenation over the subsets S (in lexicographic order) of its
coordinates in the standard basis of (R/I)_{t-j}.
"""

import itertools
import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List

import numpy as np

import linalg
from errors import InternalInvariantError
from groebner import QuotientPresentation, normal_form
from polynomials import HomogeneousPolynomial, VARIABLES

log = logging.getLogger(__name__)

SUBSETS = tuple(tuple(itertools.combinations(range(3), j)) for j in range(4))
SUBSET_INDEX = tuple({s: i for i, s in enumerate(subsets)} for subsets in SUBSETS)


def wedge_sign(S, T) -> int:
    """Sign of e_S ^ e_T = sign * e_{S u T} for disjoint sorted subsets"""
    inversions = sum(1 for s in S for t in T if s > t)
    return -1 if inversions % 2 else 1


@dataclass
class KoszulComplex:
    """K(x, y, z) (x) R/I, blocked by internal degree"""

    presentation: QuotientPresentation
    _differentials: dict = dataclass_field(default_factory=dict, repr=False)

    @property
    def field(self):
        return self.presentation.field

    @property
    def max_degree(self) -> int:
        """The largest internal degree with a nonzero block"""
        return self.presentation.socle_degree + 3

    def internal_degrees(self):
        return range(self.max_degree + 1)

    def block_dimension(self, j: int, t: int) -> int:
        if not 0 <= j <= 3:
            return 0
        return len(SUBSETS[j]) * self.presentation.dimension(t - j)

    def dimensions(self):
        """Total dimension of K_0, ..., K_3; D, 3D, 3D, D for D = dim R/I"""
        return tuple(
            sum(self.block_dimension(j, t) for t in self.internal_degrees()) for j in range(4)
        )

    def differential(self, j: int, t: int) -> np.ndarray:
        """d_j restricted to internal degree t, as a (dim K_j^t, dim K_{j-1}^t) matrix acting on rows"""
        key = (j, t)
        if key in self._differentials:
            return self._differentials[key]
        rows, cols = self.block_dimension(j, t), self.block_dimension(j - 1, t)
        D = linalg.zeros(self.field, (rows, cols))
        if rows and cols:
            Q = self.presentation
            h0, h1 = Q.dimension(t - j), Q.dimension(t - j + 1)
            for a, S in enumerate(SUBSETS[j]):
                for k, v in enumerate(S):
                    b = SUBSET_INDEX[j - 1][S[:k] + S[k + 1 :]]
                    block = Q.variable_matrix(v, t - j)
                    if k % 2:
                        block = -block
                    D[a * h0 : (a + 1) * h0, b * h1 : (b + 1) * h1] += block
            D = linalg.normalize(self.field, D)
        self._differentials[key] = D
        return D

    def check_square_zero(self):
        for t in self.internal_degrees():
            for j in (2, 3):
                product = linalg.matmul(
                    self.field, self.differential(j, t), self.differential(j - 1, t)
                )
                if not linalg.is_zero(product):
                    raise InternalInvariantError(f"d_{j - 1} d_{j} != 0 in internal degree {t}")


def koszul_complex(Q: QuotientPresentation) -> KoszulComplex:
    return KoszulComplex(Q)


@dataclass
class HomologyBlock:
    """Homology of one block K_j^t

    @param representatives  Cycle representatives as rows, in reduced echelon form modulo the
                            boundaries
    @param pivots  Pivot column of each representative
    @param boundaries  The boundaries of the block in reduced echelon form
    @param boundary_pivots  Their pivot columns
    """

    degree: int
    representatives: np.ndarray
    pivots: List[int]
    boundaries: np.ndarray
    boundary_pivots: List[int]

    @property
    def dimension(self) -> int:
        return self.representatives.shape[0]

    def coordinates(self, field, cycles) -> np.ndarray:
        """Coordinates of the homology classes of the given cycles (rows) in this block's basis"""
        reduced = linalg.reduce(field, cycles, self.boundaries, self.boundary_pivots)
        return reduced[:, self.pivots]


def _block_homology(K: KoszulComplex, j: int, t: int):
    field = K.field
    cycles = linalg.kernel(field, K.differential(j, t).T)
    boundaries, boundary_pivots = linalg.rref(field, K.differential(j + 1, t))
    reps, pivots = linalg.rref(field, linalg.reduce(field, cycles, boundaries, boundary_pivots))
    return HomologyBlock(t, reps, pivots, boundaries, boundary_pivots)


def homology_blocks(K: KoszulComplex) -> Dict[int, Dict[int, HomologyBlock]]:
    """Bases of H_j(K) for j = 0..3, block by block; blocks with zero homology are omitted

    @exception InternalInvariantError if d o d != 0 or the Euler characteristic is not 0
    """
    K.check_square_zero()
    blocks: Dict[int, Dict[int, HomologyBlock]] = {j: {} for j in range(4)}
    for t in K.internal_degrees():
        for j in range(4):
            if not K.block_dimension(j, t):
                continue
            block = _block_homology(K, j, t)
            if block.dimension:
                blocks[j][t] = block
    dims = tuple(sum(b.dimension for b in blocks[j].values()) for j in range(4))
    if dims[0] != 1 or dims[0] - dims[1] + dims[2] - dims[3] != 0:
        raise InternalInvariantError(f"Homology dimensions {dims} violate the Euler characteristic")
    log.debug(f"Koszul homology dimensions {dims}")
    return blocks


def unblocked_homology_dimensions(K: KoszulComplex):
    """Homology dimensions from the full, unblocked differentials

    The matrices are rebuilt from scratch with `groebner.normal_form` over the basis of all standard
    monomials, so this is an independent check of the blocked computation.
    """
    Q = K.presentation
    field = Q.field
    standard = [m for monos in Q.standard_monomials for m in monos]
    position = {m: i for i, m in enumerate(standard)}
    D = len(standard)

    def full(j):
        rows = len(SUBSETS[j]) * D if 0 <= j <= 3 else 0
        cols = len(SUBSETS[j - 1]) * D if 1 <= j <= 4 else 0
        M = linalg.zeros(field, (rows, cols))
        if not rows or not cols:
            return M
        for a, S in enumerate(SUBSETS[j]):
            for u in standard:
                for k, v in enumerate(S):
                    b = SUBSET_INDEX[j - 1][S[:k] + S[k + 1 :]]
                    product = HomogeneousPolynomial.monomial(field, u.times(VARIABLES[v]))
                    for mono, c in normal_form(product, Q.basis).terms:
                        entry = field.neg(c) if k % 2 else c
                        col = b * D + position[mono]
                        M[a * D + position[u], col] = field.add(M[a * D + position[u], col], entry)
        return M

    matrices = [full(j) for j in range(5)]
    ranks = [linalg.rank(field, M) for M in matrices]
    return tuple(len(SUBSETS[j]) * D - ranks[j] - ranks[j + 1] for j in range(4))
