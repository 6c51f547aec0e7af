"""Coefficient fields: GF(p) for a prime p, and the rationals.

Field values are kept as plain Python numbers in canonical form so that polynomials and matrices
can hold them without wrapping: an `int` in [0, p-1] for GF(p) and a `Fraction` for the rationals.
`FieldElement` pairs a value with its field for callers that want operator arithmetic.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import sympy


# Random coefficients over the rationals are integers drawn from [-RATIONAL_HEIGHT, RATIONAL_HEIGHT]
RATIONAL_HEIGHT = 5

# Largest prime for which products of two residues, summed over a few thousand terms, fit in int64
MAX_INT64_PRIME = 2**25


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field, identified by its characteristic

    @param characteristic  0 for the rationals, otherwise a prime p for GF(p)
    """

    characteristic: int = 3

    def __post_init__(self):
        c = self.characteristic
        if type(c) is not int or c < 0:
            raise ValueError(f"Characteristic {c!r} is not a nonnegative integer")
        if c != 0 and not sympy.isprime(c):
            raise ValueError(f"Characteristic {c} is not 0 or a prime")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def name(self) -> str:
        return "QQ" if self.is_rational else f"GF({self.characteristic})"

    @property
    def dtype(self):
        """The numpy dtype used for matrices over this field"""
        if 0 < self.characteristic < MAX_INT64_PRIME:
            return np.int64
        return object

    def normalize(self, value):
        """Return the canonical representative of an int, Fraction or numpy integer"""
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            return (value.numerator * pow(value.denominator, -1, p)) % p
        return int(value) % p

    def is_zero(self, value) -> bool:
        return value == 0

    def add(self, a, b):
        if self.characteristic:
            return (a + b) % self.characteristic
        return a + b

    def sub(self, a, b):
        if self.characteristic:
            return (a - b) % self.characteristic
        return a - b

    def mul(self, a, b):
        if self.characteristic:
            return (a * b) % self.characteristic
        return a * b

    def neg(self, a):
        if self.characteristic:
            return (-a) % self.characteristic
        return -a

    def inverse(self, a):
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self.name}")
        if self.characteristic:
            return pow(int(a), -1, self.characteristic)
        return 1 / Fraction(a)

    def balanced(self, a):
        """The representative used for printing: residues in [-(p-1)/2, (p-1)/2], fractions as is"""
        p = self.characteristic
        if p == 0:
            return a
        return a - p if a > p // 2 else a

    def random_element(self, rng, nonzero: bool = False):
        """Draw a uniformly random element

        Over the rationals the draw is an integer in [-RATIONAL_HEIGHT, RATIONAL_HEIGHT].

        @param rng  A numpy Generator
        @param nonzero  If True, zero is excluded
        """
        p = self.characteristic
        if p:
            return int(rng.integers(1 if nonzero else 0, p))
        if nonzero:
            value = int(rng.integers(1, 2 * RATIONAL_HEIGHT + 1))
            return Fraction(value - 2 * RATIONAL_HEIGHT - 1 if value > RATIONAL_HEIGHT else value)
        return Fraction(int(rng.integers(-RATIONAL_HEIGHT, RATIONAL_HEIGHT + 1)))


@dataclass(frozen=True)
class FieldElement:
    """A field value together with its field; equality is structural"""

    field: FieldSpec
    value: object = 0

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.normalize(self.value))

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError(f"Cannot mix {self.field.name} and {other.field.name}")
            return other.value
        return self.field.normalize(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def inverse(self):
        return FieldElement(self.field, self.field.inverse(self.value))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.field.balanced(self.value))
