"""Canonical multivariate integer polynomials and Diophantine equations with explicit arity."""

import logging
from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd

from sympy import symbols
from sympy.polys.domains import ZZ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from h10_py.core.exactnum import Rational
from h10_py.errors import ArityError, InvalidParameter

logger = logging.getLogger(__name__)

# exponents indexed by variable: (e1, ..., e_arity)
Monomial = tuple[int, ...]
RawTerm = tuple[int, Sequence[int]]


@lru_cache(maxsize=None)
def _poly_ring(arity: int) -> PolyRing:
    return PolyRing(symbols(f"x1:{arity + 1}", seq=True), ZZ, grlex)


def _sorted_terms(coefficients: Iterable[tuple[Monomial, int]]) -> tuple[tuple[Monomial, int], ...]:
    return tuple(sorted(coefficients, key=lambda term: grlex(term[0]), reverse=True))


def _format_monomial(monomial: Monomial) -> str:
    factors = []
    for index, exponent in enumerate(monomial, start=1):
        if exponent == 1:
            factors.append(f"x{index}")
        elif exponent > 1:
            factors.append(f"x{index}^{exponent}")
    return "*".join(factors)


@dataclass(frozen=True)
class Polynomial:
    """
    Integer polynomial in x1..x_arity.

    Terms are stored in graded-lexicographic descending order (x1 > x2 > ...),
    every monomial has exactly `arity` exponents and no coefficient is zero.
    """

    terms: tuple[tuple[Monomial, int], ...]
    arity: int

    def __post_init__(self):
        if self.arity < 1:
            raise ArityError(f"arity must be positive, got {self.arity}")
        for monomial, coefficient in self.terms:
            if len(monomial) != self.arity:
                raise ArityError(f"monomial {monomial} does not have {self.arity} exponents")
            if coefficient == 0:
                raise InvalidParameter("zero coefficients are not stored")

    @classmethod
    def zero(cls, arity: int = 1) -> "Polynomial":
        return cls((), arity)

    @classmethod
    def constant(cls, value: int, arity: int = 1) -> "Polynomial":
        if value == 0:
            return cls.zero(arity)
        return cls((((0,) * arity, value),), arity)

    @classmethod
    def variable(cls, index: int, arity: int | None = None) -> "Polynomial":
        """The polynomial x_index, in at least `index` variables."""
        if index < 1:
            raise ArityError(f"variables are numbered from 1, got x{index}")
        arity = index if arity is None else arity
        if index > arity:
            raise ArityError(f"x{index} exceeds arity {arity}")
        exponents = [0] * arity
        exponents[index - 1] = 1
        return cls(((tuple(exponents), 1),), arity)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def coefficients(self) -> dict[Monomial, int]:
        return dict(self.terms)

    @property
    def max_variable(self) -> int:
        """Largest variable index with a non-zero exponent, 0 for constants."""
        used = [
            index
            for monomial, _ in self.terms
            for index, exponent in enumerate(monomial, start=1)
            if exponent
        ]
        return max(used, default=0)

    @property
    def degree(self) -> int:
        return max((sum(monomial) for monomial, _ in self.terms), default=0)

    def pad(self, arity: int) -> "Polynomial":
        """Embed into a ring with more variables."""
        if arity < self.arity:
            if self.max_variable > arity:
                raise ArityError(f"cannot shrink {self} to arity {arity}")
            return Polynomial(tuple((m[:arity], c) for m, c in self.terms), arity)
        extra = (0,) * (arity - self.arity)
        return Polynomial(tuple((m + extra, c) for m, c in self.terms), arity)

    def content_normalized(self) -> "Polynomial":
        """Divide out the coefficient gcd and make the leading coefficient positive."""
        if self.is_zero:
            return self
        content = reduce(gcd, (abs(c) for _, c in self.terms))
        if self.terms[0][1] < 0:
            content = -content
        return Polynomial(tuple((m, c // content) for m, c in self.terms), self.arity)

    def to_element(self) -> PolyElement:
        return _poly_ring(self.arity).from_dict(dict(self.terms))

    @classmethod
    def from_element(cls, element: PolyElement, arity: int) -> "Polynomial":
        return cls(_sorted_terms((m, int(c)) for m, c in element.items() if c), arity)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return poly_arith(PolyOp.ADD, self, other)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return poly_arith(PolyOp.SUB, self, other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return poly_arith(PolyOp.MUL, self, other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple((m, -c) for m, c in self.terms), self.arity)

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise InvalidParameter(f"negative power {exponent}")
        return Polynomial.from_element(self.to_element() ** exponent, self.arity)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        pieces = []
        for monomial, coefficient in self.terms:
            body = _format_monomial(monomial)
            magnitude = abs(coefficient)
            if not body:
                text = str(magnitude)
            elif magnitude == 1:
                text = body
            else:
                text = f"{magnitude}*{body}"
            if not pieces:
                pieces.append(f"-{text}" if coefficient < 0 else text)
            else:
                pieces.append(f"- {text}" if coefficient < 0 else f"+ {text}")
        return " ".join(pieces)


def normalize(raw_terms: Iterable[RawTerm], arity: int) -> Polynomial:
    """
    Merge like terms, drop zero coefficients and impose graded-lex order.

    Args:
        raw_terms: (coefficient, exponents) pairs; exponent sequences shorter than
            `arity` are padded with zeros
        arity: Number of ambient variables

    Raises:
        ArityError: If an exponent sequence uses a variable beyond `arity`
    """
    merged: dict[Monomial, int] = defaultdict(int)
    for coefficient, exponents in raw_terms:
        exponents = tuple(exponents)
        if any(e < 0 for e in exponents):
            raise InvalidParameter(f"negative exponent in {exponents}")
        if len(exponents) > arity:
            if any(exponents[arity:]):
                raise ArityError(f"exponents {exponents} use a variable beyond arity {arity}")
            exponents = exponents[:arity]
        merged[exponents + (0,) * (arity - len(exponents))] += coefficient
    return Polynomial(_sorted_terms((m, c) for m, c in merged.items() if c), arity)


class PolyOp(Enum):
    """Arithmetic supported by poly_arith."""

    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    SQUARE = "square"


def poly_arith(
    op: PolyOp, p: Polynomial, q: Polynomial | None = None, pad: bool = True
) -> Polynomial:
    """
    Exact polynomial arithmetic; the result lives in max(p.arity, q.arity) variables.

    Args:
        op: Operation
        p: Left operand
        q: Right operand, absent for SQUARE
        pad: Embed the smaller operand instead of rejecting mismatched arities

    Raises:
        ArityError: On mismatched arities with pad disabled
    """
    if op is PolyOp.SQUARE:
        if q is not None:
            raise InvalidParameter("square takes a single operand")
        return p**2
    if q is None:
        raise InvalidParameter(f"{op.value} needs two operands")
    if p.arity != q.arity:
        if not pad:
            raise ArityError(f"arity mismatch: {p.arity} vs {q.arity}")
        arity = max(p.arity, q.arity)
        p, q = p.pad(arity), q.pad(arity)
    left, right = p.to_element(), q.to_element()
    if op is PolyOp.ADD:
        result = left + right
    elif op is PolyOp.SUB:
        result = left - right
    else:
        result = left * right
    return Polynomial.from_element(result, p.arity)


def evaluate(p: Polynomial, point: Sequence[Rational]) -> Rational:
    """
    Exact value of p at point.

    Raises:
        ArityError: If len(point) differs from p.arity
    """
    if len(point) != p.arity:
        raise ArityError(f"point of length {len(point)} for a polynomial of arity {p.arity}")
    values = [component.fraction for component in point]
    total = Fraction(0)
    for monomial, coefficient in p.terms:
        term = Fraction(coefficient)
        for value, exponent in zip(values, monomial):
            if exponent:
                term *= value**exponent
        total += term
    return Rational.from_fraction(total)


@dataclass(frozen=True)
class Equation:
    """
    The Diophantine equation lhs = 0 over tuples of length `arity`.

    The arity may exceed the largest variable in lhs; that surplus is how
    D(x1..xn) + 0*x_{n+1} = 0 is represented. lhs is stored padded to the arity.
    """

    lhs: Polynomial
    arity: int

    def __post_init__(self):
        if self.arity < 1:
            raise ArityError(f"arity must be positive, got {self.arity}")
        if self.lhs.max_variable > self.arity:
            raise ArityError(f"lhs uses x{self.lhs.max_variable} beyond arity {self.arity}")
        if self.lhs.arity != self.arity:
            object.__setattr__(self, "lhs", self.lhs.pad(self.arity))

    @classmethod
    def of(cls, lhs: Polynomial, arity: int | None = None) -> "Equation":
        return cls(lhs, lhs.arity if arity is None else arity)

    @classmethod
    def degenerate(cls, arity: int = 1) -> "Equation":
        """0 = 0, solved by every tuple."""
        return cls(Polynomial.zero(arity), arity)

    def evaluate(self, point: Sequence[Rational]) -> Rational:
        return evaluate(self.lhs, point)

    def is_solution(self, point: Sequence[Rational]) -> bool:
        return not self.evaluate(point)

    def canonical_key(self) -> tuple[int, tuple[tuple[Monomial, int], ...]]:
        return self.arity, self.lhs.content_normalized().terms

    def __str__(self) -> str:
        return f"{self.lhs} = 0 @arity={self.arity}"


def eq_canonical_equal(e1: Equation, e2: Equation) -> bool:
    """Equal arities and identical content-normalized left-hand sides."""
    return e1.canonical_key() == e2.canonical_key()
