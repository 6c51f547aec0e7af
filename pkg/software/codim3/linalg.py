"""Dense exact linear algebra over GF(p) and the rationals.

Matrices are numpy arrays. Over GF(p) they hold int64 residues (object arrays of Python ints for
very large primes); over the rationals they are object arrays of `Fraction`s. Vectors are rows:
a linear map is applied as `v @ A`.

Modular elimination is vectorised over rows. Rational elimination is fraction-free: rows are
scaled to primitive integer vectors and only converted back to fractions once the echelon form is
known, which keeps the entries small.
"""

from fractions import Fraction
from functools import reduce as fold
from math import gcd

import numpy as np

from fields import FieldSpec


def zeros(field: FieldSpec, shape) -> np.ndarray:
    return np.zeros(shape, dtype=field.dtype)


def normalize(field: FieldSpec, A) -> np.ndarray:
    """Bring every entry into canonical form"""
    p = field.characteristic
    if p:
        return np.asarray(A, dtype=field.dtype) % p
    return np.asarray(A, dtype=object)


def as_matrix(field: FieldSpec, rows, ncols: int) -> np.ndarray:
    """Build a normalized matrix from a list of rows; the column count fixes the shape when empty"""
    A = zeros(field, (len(rows), ncols))
    for i, row in enumerate(rows):
        A[i] = [field.normalize(v) for v in row]
    return A


def is_zero(A) -> bool:
    return not np.any(np.asarray(A) != 0)


def matmul(field: FieldSpec, A, B) -> np.ndarray:
    if A.shape[-1] == 0 or A.size == 0 or B.size == 0:
        return zeros(field, A.shape[:-1] + B.shape[1:])
    return normalize(field, A @ B)


def tensordot(field: FieldSpec, A, B, axes) -> np.ndarray:
    """`np.tensordot` followed by reduction; empty operands give an empty (all zero) result"""
    if A.size == 0 or B.size == 0:
        left = [n for i, n in enumerate(A.shape) if i not in axes[0]]
        right = [n for i, n in enumerate(B.shape) if i not in axes[1]]
        return zeros(field, tuple(left + right))
    return normalize(field, np.tensordot(A, B, axes=axes))


def _rref_modular(A: np.ndarray, p: int):
    rows, cols = A.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        candidates = np.flatnonzero(A[r:, c])
        if candidates.size == 0:
            continue
        k = r + int(candidates[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        factors = A[:, c].copy()
        factors[r] = 0
        others = np.flatnonzero(factors)
        if others.size:
            A[others] = (A[others] - np.outer(factors[others], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _integer_row(row) -> np.ndarray:
    values = [Fraction(v) for v in row]
    denominator = fold(lambda a, b: a * b // gcd(a, b), (v.denominator for v in values), 1)
    return np.array([int(v * denominator) for v in values] or [], dtype=object)


def _primitive(row: np.ndarray) -> np.ndarray:
    g = fold(gcd, (abs(int(v)) for v in row), 0)
    if g > 1:
        return row // g
    return row


def _rref_rational(A: np.ndarray):
    rows, cols = A.shape
    M = np.zeros((rows, cols), dtype=object)
    for i in range(rows):
        M[i] = _integer_row(A[i])
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        candidates = [k for k in range(r, rows) if M[k, c] != 0]
        if not candidates:
            continue
        k = candidates[0]
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = _primitive(M[r])
        others = [i for i in range(rows) if i != r and M[i, c] != 0]
        if others:
            M[others] = M[others] * M[r, c] - np.outer(M[others, c], M[r])
            for i in others:
                M[i] = _primitive(M[i])
        pivots.append(c)
        r += 1
    R = np.zeros((r, cols), dtype=object)
    for i, c in enumerate(pivots):
        lead = int(M[i, c])
        R[i] = [Fraction(int(v), lead) for v in M[i]]
    return R, pivots


def rref(field: FieldSpec, A):
    """Reduced row echelon form

    Pivots are chosen as the topmost nonzero entry of each column, so the result is deterministic.

    @return  (R, pivots): the nonzero rows of the reduced form, and the pivot column of each row
    """
    A = normalize(field, A).copy()
    if A.ndim != 2:
        raise ValueError(f"Expected a matrix, got shape {A.shape}")
    if field.characteristic:
        return _rref_modular(A, field.characteristic)
    return _rref_rational(A)


def rank(field: FieldSpec, A) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(field, A)[1])


def kernel(field: FieldSpec, A) -> np.ndarray:
    """A basis of {x : A @ x = 0}, returned as the rows of a matrix"""
    A = normalize(field, A)
    n = A.shape[1]
    E, pivots = rref(field, A)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    K = zeros(field, (len(free), n))
    for k, f in enumerate(free):
        K[k, f] = 1
    if pivots and free:
        K[:, pivots] = normalize(field, -E[:, free].T)
    return K


def reduce(field: FieldSpec, V, E, pivots) -> np.ndarray:
    """Reduce the rows of V modulo the row space of E, given E in reduced row echelon form

    The result has zeros in every pivot column of E and depends only on the class of each row
    modulo the row space.
    """
    V = normalize(field, V)
    if not len(pivots) or V.shape[0] == 0:
        return V.copy()
    return normalize(field, V - matmul(field, V[:, pivots], E))
