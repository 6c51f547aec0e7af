"""The Tor algebra A = Tor^R(R/I, k) of a grade 3 perfect ideal and its classification.

A is computed as the homology of the Koszul complex on x, y, z tensored with R/I; the exterior
product on the complex descends to A. Classification uses the ranks

    p = rank A_1 A_1,   q = rank A_1 A_2,   r = rank (A_2 -> Hom(A_1, A_3))

and, to tell T from H(3,0), the number s of classes in A_1 acting nontrivially on A_1.

    (p, q, r)                       class
    (0, 1, r >= 2)                  G(r)
    (1, 1, 2)                       B
    (3, 1, 3) with (m, n) = (3, 1)  C(3)
    (3, 0, 0), s = 3                T
    (3, 0, 0), s = 4                H(3,0)
    (p, q, q)                       H(p,q)
"""

import logging
from dataclasses import dataclass
from typing import Dict, NamedTuple, Optional

import numpy as np

import linalg
from errors import InternalInvariantError, UnclassifiableError
from groebner import quotient_presentation
from koszul import (
    HomologyBlock,
    KoszulComplex,
    SUBSET_INDEX,
    SUBSETS,
    homology_blocks,
    koszul_complex,
    wedge_sign,
)
from polynomials import Ideal

log = logging.getLogger(__name__)

CLASS_NAMES = ("B", "C", "G", "H", "T")


@dataclass
class TorAlgebra:
    """Homology bases of the Koszul complex and, once computed, the product tensors

    The basis of A_j lists the classes of each block in ascending internal degree.

    @param mu11  Shape (m, m, dim A_2): products of basis classes of A_1
    @param mu12  Shape (m, dim A_2, n): products of A_1 with A_2
    """

    complex: KoszulComplex
    blocks: Dict[int, Dict[int, HomologyBlock]]
    mu11: Optional[np.ndarray] = None
    mu12: Optional[np.ndarray] = None

    @property
    def field(self):
        return self.complex.field

    def dimension(self, j: int) -> int:
        return sum(b.dimension for b in self.blocks[j].values())

    def dimensions(self):
        return tuple(self.dimension(j) for j in range(4))

    def offsets(self, j: int) -> Dict[int, int]:
        """Index of the first basis class of each block of A_j"""
        offsets, total = {}, 0
        for t in sorted(self.blocks[j]):
            offsets[t] = total
            total += self.blocks[j][t].dimension
        return offsets

    def internal_degrees(self, j: int):
        """Internal degree of each basis class of A_j"""
        return [t for t in sorted(self.blocks[j]) for _ in range(self.blocks[j][t].dimension)]


class TorInvariants(NamedTuple):
    m: int
    n: int
    p: int
    q: int
    r: int


@dataclass(frozen=True)
class TorProfile:
    """The classification tuple (m, n, class, p, q, r)"""

    m: int
    n: int
    class_name: str
    p: int
    q: int
    r: int

    @property
    def label(self) -> str:
        if self.class_name == "G":
            return f"G({self.r})"
        if self.class_name == "H":
            return f"H({self.p},{self.q})"
        if self.class_name == "C":
            return "C(3)"
        return self.class_name

    def as_tuple(self):
        return (self.m, self.n, self.class_name, self.p, self.q, self.r)

    def __str__(self):
        return f"({self.m},{self.n},{self.class_name},{self.p},{self.q},{self.r})"


def graded_homology(K: KoszulComplex) -> TorAlgebra:
    """Bases of A_0, ..., A_3, without products

    @exception InternalInvariantError if d o d != 0 or the Euler characteristic is violated
    """
    return TorAlgebra(K, homology_blocks(K))


def _products(A: TorAlgebra, i: int, k: int) -> np.ndarray:
    """The tensor of products A_i x A_k -> A_{i+k}"""
    field = A.field
    K = A.complex
    Q = K.presentation
    j = i + k
    result = linalg.zeros(field, (A.dimension(i), A.dimension(k), A.dimension(j)))
    left_offsets, right_offsets, target_offsets = A.offsets(i), A.offsets(k), A.offsets(j)

    for t1, left in A.blocks[i].items():
        for t2, right in A.blocks[k].items():
            t = t1 + t2
            target = A.blocks[j].get(t)
            if target is None:
                continue
            d1, d2 = t1 - i, t2 - k
            h1, h2, h12 = Q.dimension(d1), Q.dimension(d2), Q.dimension(d1 + d2)
            na, nb = left.dimension, right.dimension
            tensor = Q.multiplication_tensor(d1, d2)
            a = left.representatives.reshape(na, len(SUBSETS[i]), h1)
            b = right.representatives.reshape(nb, len(SUBSETS[k]), h2)
            product = linalg.zeros(field, (na, nb, len(SUBSETS[j]) * h12))
            for s_index, S in enumerate(SUBSETS[i]):
                for t_index, T in enumerate(SUBSETS[k]):
                    if set(S) & set(T):
                        continue
                    u = SUBSET_INDEX[j][tuple(sorted(S + T))]
                    step = linalg.tensordot(field, a[:, s_index, :], tensor, axes=([1], [0]))
                    value = linalg.tensordot(field, b[:, t_index, :], step, axes=([1], [1]))
                    value = value.transpose(1, 0, 2)
                    if wedge_sign(S, T) < 0:
                        value = -value
                    product[:, :, u * h12 : (u + 1) * h12] += value
            product = linalg.normalize(field, product).reshape(na * nb, -1)

            boundary_map = K.differential(j, t)
            if not linalg.is_zero(linalg.matmul(field, product, boundary_map)):
                raise InternalInvariantError(
                    f"Product of cycles in degrees {t1} and {t2} is not a cycle"
                )
            coordinates = target.coordinates(field, product).reshape(na, nb, target.dimension)
            lo, ro, to = left_offsets[t1], right_offsets[t2], target_offsets[t]
            result[lo : lo + na, ro : ro + nb, to : to + target.dimension] = coordinates
    return result


def tor_products(A: TorAlgebra) -> TorAlgebra:
    """Fill in the products A_1 x A_1 -> A_2 and A_1 x A_2 -> A_3

    Cycle representatives are multiplied in the Koszul complex,
    (u e_S)(v e_T) = sign(S, T) NF(uv) e_{S u T}, and projected to homology.

    @exception InternalInvariantError if a product of cycles is not a cycle
    """
    A.mu11 = _products(A, 1, 1)
    A.mu12 = _products(A, 1, 2)
    return A


def compute_invariants(A: TorAlgebra) -> TorInvariants:
    field = A.field
    m, a2, n = A.dimension(1), A.dimension(2), A.dimension(3)
    p = linalg.rank(field, A.mu11.reshape(m * m, a2))
    q = linalg.rank(field, A.mu12.reshape(m * a2, n))
    r = linalg.rank(field, A.mu12.transpose(1, 0, 2).reshape(a2, m * n))
    return TorInvariants(m, n, p, q, r)


def acting_rank(A: TorAlgebra) -> int:
    """Rank of A_1 -> Hom(A_1, A_2), a -> (b -> ab): the number of independent classes of A_1
    with nonzero products in A_1
    """
    m, a2 = A.dimension(1), A.dimension(2)
    return linalg.rank(A.field, A.mu11.reshape(m, m * a2))


def pairing_rank(A: TorAlgebra) -> int:
    """Rank of A_1 -> Hom(A_2, A_3); reported for diagnostics only"""
    m, a2, n = A.dimension(1), A.dimension(2), A.dimension(3)
    return linalg.rank(A.field, A.mu12.reshape(m, a2 * n))


def classify(m: int, n: int, p: int, q: int, r: int, A: TorAlgebra = None) -> TorProfile:
    """Decide the class from the invariants

    The algebra is only consulted when (p, q, r) = (3, 0, 0).

    @exception UnclassifiableError if no multiplication table matches
    """
    if p == 0 and q == 1 and r >= 2:
        return TorProfile(m, n, "G", p, q, r)
    if (p, q, r) == (1, 1, 2):
        return TorProfile(m, n, "B", p, q, r)
    if (p, q, r) == (3, 1, 3) and (m, n) == (3, 1):
        return TorProfile(m, n, "C", p, q, r)
    if (p, q, r) == (3, 0, 0):
        if A is None:
            raise UnclassifiableError("T and H(3,0) can only be told apart from the algebra")
        s = acting_rank(A)
        if s == 3:
            return TorProfile(m, n, "T", p, q, r)
        if s == 4:
            return TorProfile(m, n, "H", p, q, r)
        raise UnclassifiableError(f"(p,q,r) = (3,0,0) with {s} classes acting on A_1")
    if r == q:
        return TorProfile(m, n, "H", p, q, r)
    raise UnclassifiableError(f"No class has (m,n,p,q,r) = ({m},{n},{p},{q},{r})")


def tor_algebra(ideal: Ideal) -> TorAlgebra:
    """The Tor algebra of R/I with products

    @exception NotArtinianError if I does not have codimension 3
    """
    return tor_products(graded_homology(koszul_complex(quotient_presentation(ideal))))


def classify_ideal(ideal: Ideal) -> TorProfile:
    A = tor_algebra(ideal)
    profile = classify(*compute_invariants(A), A)
    log.debug(f"{ideal.to_text()} -> {profile}")
    return profile
