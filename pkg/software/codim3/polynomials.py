"""Homogeneous polynomials in k[x, y, z].

Monomials are ordered graded reverse lexicographically with x > y > z, so in degree 2 the order is
x^2 > xy > y^2 > xz > yz > z^2. Polynomials keep their terms sorted descending in that order, with
nonzero canonical coefficients.

Two text forms are supported: the machine form read by Macaulay2 (`x^2+y*z`, wrapped as
`matrix{{...}}` for generator lists) and the human form used in class.txt (`x2+yz`).
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Tuple

from errors import ParseError
from fields import FieldElement, FieldSpec

VARIABLE_NAMES = "xyz"

MACHINE = "machine"
HUMAN = "human"


class Monomial(NamedTuple):
    """x^a y^b z^c"""

    a: int
    b: int
    c: int

    @property
    def degree(self) -> int:
        return self.a + self.b + self.c

    def sort_key(self):
        """Ascending key for grevlex with x > y > z"""
        return (self.a + self.b + self.c, -self.c, -self.b)

    def times(self, other: "Monomial") -> "Monomial":
        return Monomial(self.a + other.a, self.b + other.b, self.c + other.c)

    def divides(self, other: "Monomial") -> bool:
        return self.a <= other.a and self.b <= other.b and self.c <= other.c

    def quotient(self, divisor: "Monomial") -> "Monomial":
        return Monomial(self.a - divisor.a, self.b - divisor.b, self.c - divisor.c)

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(max(self.a, other.a), max(self.b, other.b), max(self.c, other.c))

    def is_coprime(self, other: "Monomial") -> bool:
        return not (self.a and other.a or self.b and other.b or self.c and other.c)

    def support(self) -> frozenset:
        return frozenset(i for i, e in enumerate(self) if e)

    def to_text(self, mode: str = MACHINE) -> str:
        parts = []
        for name, e in zip(VARIABLE_NAMES, self):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}" if mode == MACHINE else f"{name}{e}")
        return ("*" if mode == MACHINE else "").join(parts)


ONE = Monomial(0, 0, 0)
VARIABLES = (Monomial(1, 0, 0), Monomial(0, 1, 0), Monomial(0, 0, 1))


@lru_cache(maxsize=None)
def monomials_of_degree(d: int) -> Tuple[Monomial, ...]:
    """All monomials of degree d, sorted descending in the term order"""
    monos = [Monomial(a, b, d - a - b) for a in range(d + 1) for b in range(d + 1 - a)]
    return tuple(sorted(monos, key=Monomial.sort_key, reverse=True))


@lru_cache(maxsize=None)
def monomial_index(d: int) -> dict:
    """Position of each degree-d monomial in `monomials_of_degree(d)`"""
    return {m: i for i, m in enumerate(monomials_of_degree(d))}


@dataclass(frozen=True)
class HomogeneousPolynomial:
    """A homogeneous polynomial; the zero polynomial has no terms but keeps a degree

    @param field  The coefficient field
    @param degree  The common degree of every monomial
    @param terms  (Monomial, canonical value) pairs, sorted descending, coefficients nonzero
    """

    field: FieldSpec
    degree: int
    terms: tuple = ()

    @classmethod
    def from_dict(cls, field: FieldSpec, degree: int, coefficients: dict):
        """Build a polynomial from {Monomial: coefficient}, dropping zeros

        @exception ValueError if a monomial does not have the given degree
        """
        terms = []
        for mono, value in coefficients.items():
            if mono.degree != degree:
                raise ValueError(f"Monomial {mono.to_text()} is not of degree {degree}")
            value = field.normalize(value)
            if value != 0:
                terms.append((mono, value))
        terms.sort(key=lambda t: t[0].sort_key(), reverse=True)
        return cls(field, degree, tuple(terms))

    @classmethod
    def from_row(cls, field: FieldSpec, degree: int, row):
        """Build a polynomial from its coefficient vector over `monomials_of_degree(degree)`"""
        monos = monomials_of_degree(degree)
        return cls.from_dict(field, degree, {monos[i]: v for i, v in enumerate(row) if v != 0})

    @classmethod
    def zero(cls, field: FieldSpec, degree: int = 0):
        return cls(field, degree, ())

    @classmethod
    def monomial(cls, field: FieldSpec, mono: Monomial, coefficient=1):
        return cls.from_dict(field, mono.degree, {mono: coefficient})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def num_terms(self) -> int:
        return len(self.terms)

    @property
    def leading_monomial(self) -> Monomial:
        return self.terms[0][0]

    @property
    def leading_coefficient(self):
        return self.terms[0][1]

    def as_dict(self) -> dict:
        return dict(self.terms)

    def coefficient(self, mono: Monomial) -> FieldElement:
        return FieldElement(self.field, self.as_dict().get(mono, 0))

    def term_elements(self):
        """The terms as (Monomial, FieldElement) pairs"""
        return [(m, FieldElement(self.field, v)) for m, v in self.terms]

    def to_row(self):
        """Coefficient list over `monomials_of_degree(self.degree)`"""
        index = monomial_index(self.degree)
        row = [0] * len(index)
        for mono, value in self.terms:
            row[index[mono]] = value
        return row

    def _check_field(self, other):
        if other.field != self.field:
            raise ValueError(
                f"Cannot combine polynomials over {self.field.name} and {other.field.name}"
            )

    def __add__(self, other: "HomogeneousPolynomial") -> "HomogeneousPolynomial":
        self._check_field(other)
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        if self.degree != other.degree:
            raise ValueError(
                f"Cannot add polynomials of degrees {self.degree} and {other.degree}: not homogeneous"
            )
        acc = self.as_dict()
        for mono, value in other.terms:
            acc[mono] = self.field.add(acc.get(mono, 0), value)
        return HomogeneousPolynomial.from_dict(self.field, self.degree, acc)

    def __neg__(self) -> "HomogeneousPolynomial":
        return self.scale(-1)

    def __sub__(self, other: "HomogeneousPolynomial") -> "HomogeneousPolynomial":
        return self + (-other)

    def __mul__(self, other: "HomogeneousPolynomial") -> "HomogeneousPolynomial":
        self._check_field(other)
        acc = {}
        for m1, v1 in self.terms:
            for m2, v2 in other.terms:
                m = m1.times(m2)
                acc[m] = self.field.add(acc.get(m, 0), self.field.mul(v1, v2))
        return HomogeneousPolynomial.from_dict(self.field, self.degree + other.degree, acc)

    def scale(self, c) -> "HomogeneousPolynomial":
        c = c.value if isinstance(c, FieldElement) else self.field.normalize(c)
        return HomogeneousPolynomial.from_dict(
            self.field, self.degree, {m: self.field.mul(v, c) for m, v in self.terms}
        )

    def shift(self, mono: Monomial) -> "HomogeneousPolynomial":
        """Multiply by a monomial"""
        return HomogeneousPolynomial(
            self.field, self.degree + mono.degree, tuple((m.times(mono), v) for m, v in self.terms)
        )

    def monic(self) -> "HomogeneousPolynomial":
        if self.is_zero:
            return self
        return self.scale(self.field.inverse(self.leading_coefficient))

    def to_text(self, mode: str = MACHINE) -> str:
        return serialize_polynomial(self, mode)

    def __str__(self):
        return self.to_text()


@dataclass(frozen=True)
class Ideal:
    """A homogeneous ideal given by generators; the zero ideal has no generators

    @exception ValueError if a generator is a nonzero constant (the unit ideal is not homogeneous
               of positive degree and has no quotient to study) or comes from another field
    """

    field: FieldSpec
    generators: tuple = ()

    def __post_init__(self):
        gens = tuple(g for g in self.generators if not g.is_zero)
        for g in gens:
            if g.field != self.field:
                raise ValueError(f"Generator {g} is not over {self.field.name}")
            if g.degree == 0:
                raise ValueError("A nonzero constant generates the unit ideal")
        object.__setattr__(self, "generators", gens)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def to_text(self, mode: str = MACHINE) -> str:
        return serialize_matrix(self.generators, mode)


def ring_arithmetic(f: HomogeneousPolynomial, g, kind: str) -> HomogeneousPolynomial:
    """Apply one ring operation

    @param f  The left operand
    @param g  The right operand: a polynomial for "add" and "multiply", a scalar for "scale"
    @param kind  One of "add", "multiply", "scale"
    """
    if kind == "add":
        return f + g
    elif kind == "multiply":
        return f * g
    elif kind == "scale":
        return f.scale(g)
    raise ValueError(f"Unknown operation {kind}")


def random_homogeneous(field: FieldSpec, d: int, num_terms: int, rng) -> HomogeneousPolynomial:
    """Draw a random form of degree d

    With num_terms > 0 the form has exactly num_terms distinct monomials (or every monomial of
    degree d if there are fewer) with random nonzero coefficients. With num_terms = 0 every
    monomial gets an independent random coefficient, zero allowed, redrawn if all are zero.

    @param rng  A numpy Generator
    """
    if d < 1:
        raise ValueError(f"Degree {d} forms are constants")
    monos = monomials_of_degree(d)
    if num_terms > 0:
        chosen = rng.choice(len(monos), size=min(num_terms, len(monos)), replace=False)
        coefficients = {monos[int(i)]: field.random_element(rng, nonzero=True) for i in chosen}
        return HomogeneousPolynomial.from_dict(field, d, coefficients)
    while True:
        f = HomogeneousPolynomial.from_dict(
            field, d, {m: field.random_element(rng) for m in monos}
        )
        if not f.is_zero:
            return f


def serialize_polynomial(f: HomogeneousPolynomial, mode: str = MACHINE) -> str:
    """Render a polynomial as text; coefficients of GF(p) use balanced residues"""
    if f.is_zero:
        return "0"
    out = []
    for mono, value in f.terms:
        c = f.field.balanced(value)
        sign = "-" if c < 0 else "+"
        c = abs(c)
        body = mono.to_text(MACHINE)
        if not body:
            body = str(c)
        elif c != 1:
            body = f"{c}*{body}"
        out.append(sign + body)
    text = "".join(out)
    if text[0] == "+":
        text = text[1:]
    if mode == HUMAN:
        text = text.replace("*", "").replace("^", "")
    return text


def serialize_matrix(generators, mode: str = MACHINE) -> str:
    """Render a generator list: `matrix{{g1,g2,...}}` in machine form, space separated in human form"""
    if mode == HUMAN:
        return " ".join(serialize_polynomial(g, HUMAN) for g in generators)
    return "matrix{{" + ",".join(serialize_polynomial(g, MACHINE) for g in generators) + "}}"


_TOKEN = re.compile(r"\d+|[A-Za-z_]\w*|\S")


class _Parser:
    """Recursive descent over the machine grammar; juxtaposed factors such as `xy^2` are accepted"""

    def __init__(self, text: str, field: FieldSpec):
        self.text = text
        self.field = field
        self.tokens = []
        for match in _TOKEN.finditer(text):
            token = match.group()
            if token[0].isalpha() and token != "matrix":
                # split juxtaposed variables, e.g. "xyz"
                self.tokens.extend((c, match.start() + i) for i, c in enumerate(token))
            else:
                self.tokens.append((token, match.start()))
        self.pos = 0

    def error(self, message: str):
        if self.pos < len(self.tokens):
            token, where = self.tokens[self.pos]
            raise ParseError(
                f"{message}: unexpected token {token!r} at position {where} in {self.text!r}"
            )
        raise ParseError(f"{message}: unexpected end of input in {self.text!r}")

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self, expected: str = None):
        token = self.peek()
        if token is None or (expected is not None and token != expected):
            self.error(f"expected {expected!r}" if expected else "expected more input")
        self.pos += 1
        return token

    def number(self) -> int:
        token = self.peek()
        if token is None or not token.isdigit():
            self.error("expected a number")
        self.pos += 1
        return int(token)

    def term(self):
        coefficient = self.field.normalize(1)
        exponents = [0, 0, 0]
        seen = False
        while True:
            token = self.peek()
            if token is not None and token.isdigit():
                value = self.number()
                if self.peek() == "/":
                    self.take("/")
                    denominator = self.field.normalize(self.number())
                    if self.field.is_zero(denominator):
                        self.pos -= 1
                        self.error(f"denominator is zero in {self.field.name}")
                    value = self.field.mul(
                        self.field.normalize(value), self.field.inverse(denominator)
                    )
                coefficient = self.field.mul(coefficient, self.field.normalize(value))
            elif token is not None and token in VARIABLE_NAMES:
                self.pos += 1
                e = 1
                if self.peek() == "^":
                    self.take("^")
                    e = self.number()
                exponents[VARIABLE_NAMES.index(token)] += e
            else:
                if not seen:
                    self.error("expected a coefficient or a variable")
                break
            seen = True
            if self.peek() == "*":
                self.take("*")
                token = self.peek()
                if token is None or not (token.isdigit() or token in VARIABLE_NAMES):
                    self.error("expected a factor after '*'")
        return Monomial(*exponents), coefficient

    def polynomial(self, stop=(None,)):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        terms = []
        while True:
            mono, c = self.term()
            terms.append((mono, c if sign > 0 else self.field.neg(c)))
            if self.peek() in ("+", "-"):
                sign = -1 if self.take() == "-" else 1
            elif self.peek() in stop:
                break
            else:
                self.error("expected '+', '-' or the end of the polynomial")
        degrees = {m.degree for m, _ in terms}
        if len(degrees) > 1:
            rendered = self.text if stop == (None,) else "a matrix entry"
            raise ParseError(
                f"not homogeneous: {rendered} mixes degrees "
                f"{', '.join(str(d) for d in sorted(degrees))}"
            )
        degree = degrees.pop()
        acc = {}
        for mono, c in terms:
            acc[mono] = self.field.add(acc.get(mono, 0), c)
        return HomogeneousPolynomial.from_dict(self.field, degree, acc)

    def matrix(self):
        self.take("matrix")
        self.take("{")
        self.take("{")
        generators = []
        if self.peek() != "}":
            while True:
                generators.append(self.polynomial(stop=(",", "}")))
                if self.peek() == ",":
                    self.take(",")
                else:
                    break
        self.take("}")
        self.take("}")
        if self.peek() is not None:
            self.error("trailing input after matrix")
        return generators


def parse_polynomial(text: str, field: FieldSpec):
    """Read a polynomial in the machine grammar

    A `matrix{{...}}` wrapper yields a list of generators instead of a single polynomial.

    @exception ParseError naming the offending token, or for non-homogeneous input
    """
    parser = _Parser(text.strip(), field)
    if parser.peek() == "matrix":
        return parser.matrix()
    if parser.peek() is None:
        raise ParseError(f"empty polynomial text {text!r}")
    result = parser.polynomial()
    return result


def parse_matrix(text: str, field: FieldSpec) -> list:
    """Read `matrix{{g1,...}}`, or a bare comma separated generator list, into polynomials"""
    text = text.strip()
    if not text.startswith("matrix"):
        text = "matrix{{" + text + "}}"
    return parse_polynomial(text, field)
