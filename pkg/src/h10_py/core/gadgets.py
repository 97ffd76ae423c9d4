"""
Equation transforms behind the finite-solutions and solvability procedures.

Variable layout of the non-zero gadget: x1 = b, x2 = y, x3..x6 = y1..y4.
Variable layout of the avoidance equation for D of arity n: x1..xn are D's
variables, x_{n+1} = y, x_{n+2}..x_{n+5} = y1..y4.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import reduce

from h10_py.core.codec import QTuple
from h10_py.core.exactnum import Rational, four_squares
from h10_py.core.poly import Equation, Polynomial, evaluate
from h10_py.core.rings import RingSpec
from h10_py.errors import ArityError, InvalidParameter

logger = logging.getLogger(__name__)

# (y, y1, y2, y3, y4) for the non-zero gadget, or a full solution tuple
Assignment = QTuple


def add_dummy(eq: Equation) -> Equation:
    """D(x1..xn) + 0*x_{n+1} = 0."""
    return Equation(eq.lhs, eq.arity + 1)


def _sum_of_squares(first: int, last: int, arity: int) -> Polynomial:
    return reduce(
        lambda acc, i: acc + Polynomial.variable(i, arity) ** 2,
        range(first, last + 1),
        Polynomial.zero(arity),
    )


def build_nonzero_equation(m: int) -> Equation:
    """
    y*b - m^2 - y1^2 - y2^2 - y3^2 - y4^2 = 0 with b = x1, y = x2, y_i = x_{i+2}.

    Solvable in R exactly when b != 0.
    """
    if m == 0:
        raise InvalidParameter("m must be a non-zero integer")
    arity = 6
    lhs = (
        Polynomial.variable(2, arity) * Polynomial.variable(1, arity)
        - Polynomial.constant(m * m, arity)
        - _sum_of_squares(3, 6, arity)
    )
    return Equation(lhs, arity)


def _check_integer_member(m: int, ring: RingSpec) -> None:
    ring.require_subring()
    if m == 0 or not ring.contains(Rational(m)):
        raise InvalidParameter(f"m = {m} must be a non-zero integer of {ring}")


def witness_nonzero(b: Rational, m: int, ring: RingSpec) -> Assignment | None:
    """
    Solve y*b - m^2 - sum(y_i^2) = 0 in R for b != 0.

    Writing b = p/q with p > 0 (the sign goes to q), y = m^2*q gives
    y*b - m^2 = m^2*(p - 1), and four squares of p - 1 scaled by m finish it.

    Returns:
        (y, m*t1, m*t2, m*t3, m*t4), or None when b == 0 (no solution exists)
    """
    _check_integer_member(m, ring)
    if not ring.contains(b):
        raise InvalidParameter(f"b = {b} is not in {ring}")
    if not b:
        return None
    p = abs(b.hat)
    q = b.bar if b.hat > 0 else -b.bar
    y = m * m * q
    t = four_squares(p - 1)
    return QTuple.of(y, m * t.t1, m * t.t2, m * t.t3, m * t.t4)


def nonzero_assignment(b: Rational, witness: Assignment) -> QTuple:
    """(b, y, y1..y4): a zero of build_nonzero_equation(m)."""
    return QTuple((b,) + witness.components)


def _distance_square_sum(point: QTuple, arity: int) -> Polynomial:
    """sum_i (x_i * bar(r_i) - hat(r_i))^2."""
    return reduce(
        lambda acc, item: acc
        + (
            Polynomial.constant(item[1].bar, arity) * Polynomial.variable(item[0], arity)
            - Polynomial.constant(item[1].hat, arity)
        )
        ** 2,
        enumerate(point, start=1),
        Polynomial.zero(arity),
    )


def exclusion_product(points: Sequence[QTuple], n: int | None = None) -> Polynomial:
    """
    Product over points of sum_i (x_i * bar(r_i) - hat(r_i))^2.

    Vanishes exactly on the given points; the empty product is 1.

    Args:
        points: Tuples, all of length n
        n: Arity; required when points is empty, defaults to 1 then

    Raises:
        ArityError: If the tuples have mixed lengths or disagree with n
    """
    lengths = {len(point) for point in points}
    if len(lengths) > 1:
        raise ArityError(f"excluded points have mixed lengths {sorted(lengths)}")
    if lengths:
        length = lengths.pop()
        if n is not None and n != length:
            raise ArityError(f"points of length {length} for arity {n}")
        n = length
    arity = n or 1
    return reduce(
        lambda acc, point: acc * _distance_square_sum(point, arity),
        points,
        Polynomial.constant(1, arity),
    )


def avoidance_equation(eq: Equation, points: Sequence[QTuple], m: int) -> Equation:
    """
    D^2 + (x_{n+1} * P - m^2 - sum_{j=2..5} x_{n+j}^2)^2 = 0, P = exclusion_product(points).

    Over any R inside Q this is solvable in R^{n+5} iff D = 0 has a solution in
    R^n outside points: both squares vanish, P(x) != 0 and the non-zero gadget
    holds with b = P(x).
    """
    if m == 0:
        raise InvalidParameter("m must be a non-zero integer")
    n = eq.arity
    arity = n + 5
    product = exclusion_product(points, n).pad(arity)
    gadget = (
        Polynomial.variable(n + 1, arity) * product
        - Polynomial.constant(m * m, arity)
        - _sum_of_squares(n + 2, n + 5, arity)
    )
    return Equation(eq.lhs.pad(arity) ** 2 + gadget**2, arity)


@dataclass(frozen=True)
class AvoidanceQuery:
    """Is equation = 0 solvable in ring^n outside the finite set `excluded`?"""

    equation: Equation
    ring: RingSpec
    excluded: tuple[QTuple, ...]

    def __post_init__(self):
        for point in self.excluded:
            if len(point) != self.equation.arity:
                raise ArityError(
                    f"excluded point {point} does not have length {self.equation.arity}"
                )

    def is_excluded(self, point: QTuple) -> bool:
        return point in self.excluded

    def flatten(self, m: int) -> Equation:
        return avoidance_equation(self.equation, self.excluded, m)

    def __str__(self) -> str:
        excluded = ", ".join(str(point) for point in self.excluded)
        return f"{self.equation} over {self.ring} excluding [{excluded}]"


def avoidance_witness(query: AvoidanceQuery, solution: QTuple, m: int) -> QTuple:
    """
    Extend a solution of D outside the excluded set to a zero of query.flatten(m).

    Raises:
        InvalidParameter: If solution does not solve D, is excluded, or leaves R
    """
    if not query.equation.is_solution(solution):
        raise InvalidParameter(f"{solution} does not solve {query.equation}")
    if query.is_excluded(solution):
        raise InvalidParameter(f"{solution} is excluded")
    product = evaluate(exclusion_product(query.excluded, query.equation.arity), solution)
    witness = witness_nonzero(product, m, query.ring)
    if witness is None:
        raise AssertionError("exclusion product vanished outside the excluded set")
    return solution.extend(*witness)
