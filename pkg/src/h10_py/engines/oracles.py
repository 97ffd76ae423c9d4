"""
Oracles answering "is D = 0 solvable in R^n outside a finite excluded set?".

Three kinds decide desk-scale fragments:

    table               a stored, exhaustive solution set (or the claim that
                        there are infinitely many solutions)
    univariate-linear   exact for a*x1 + b = 0 at arity 1
    bounded-search      scans the first B tuples of the ring's enumeration;
                        Solvable answers carry a witness, Unsolvable answers
                        are uncertified
"""

import json
import logging
from abc import ABC, abstractmethod
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from h10_py.configs import DEFAULT_CONFIG
from h10_py.core.codec import QTuple, surjection
from h10_py.core.exactnum import Rational
from h10_py.core.gadgets import AvoidanceQuery
from h10_py.core.parser import parse_rational, parse_tuple
from h10_py.core.poly import Equation, Polynomial, eq_canonical_equal
from h10_py.core.rings import RingSpec
from h10_py.errors import (
    InvalidDenominator,
    InvalidParameter,
    OracleValidationError,
    ParseError,
    UnsupportedQuery,
)
from h10_py.models import OracleAnswer

logger = logging.getLogger(__name__)


class OracleKind(str, Enum):
    TABLE = "table"
    UNIVARIATE_LINEAR = "univariate-linear"
    BOUNDED_SEARCH = "bounded-search"


@dataclass(frozen=True)
class OracleReply:
    """
    An oracle answer.

    `witness` is a solution outside the excluded set when one is known;
    `certified` is False only for bounded-search Unsolvable answers.
    """

    answer: OracleAnswer
    witness: QTuple | None = None
    certified: bool = True

    @classmethod
    def solvable(cls, witness: QTuple | None = None) -> "OracleReply":
        return cls(OracleAnswer.SOLVABLE, witness)

    @classmethod
    def unsolvable(cls, certified: bool = True) -> "OracleReply":
        return cls(OracleAnswer.UNSOLVABLE, certified=certified)


class Oracle(ABC):
    """Answers avoidance queries; implementations decide a fragment of H10(R)."""

    kind: OracleKind

    @abstractmethod
    def answer(self, query: AvoidanceQuery) -> OracleReply:
        pass


def _first_unexcluded(ring: RingSpec, query: AvoidanceQuery) -> QTuple:
    # every supported ring is infinite, so a finite excluded set is eventually escaped
    i = 0
    while True:
        candidate = surjection(ring, query.equation.arity, i)
        if not query.is_excluded(candidate):
            return candidate
        i += 1


class TableOracle(Oracle):
    """
    Answers from a stored solution set claimed to be exhaustive.

    Solvable iff some stored solution lies outside the excluded set; with
    `infinite` set every query is Solvable.
    """

    kind = OracleKind.TABLE

    def __init__(
        self,
        equation: Equation,
        ring: RingSpec,
        solutions: Iterable[QTuple] = (),
        infinite: bool = False,
    ):
        self.equation = equation
        self.ring = ring
        self.solutions = tuple(solutions)
        self.infinite = infinite
        self._validate()

    def _validate(self) -> None:
        for solution in self.solutions:
            if len(solution) != self.equation.arity:
                raise OracleValidationError(
                    f"{solution} does not have length {self.equation.arity}"
                )
            if not all(self.ring.contains(c) for c in solution):
                raise OracleValidationError(f"{solution} is not a tuple over {self.ring}")
            if not self.equation.is_solution(solution):
                raise OracleValidationError(f"{solution} does not solve {self.equation}")
        logger.info(
            "table oracle for %s over %s validated with %s",
            self.equation,
            self.ring,
            "infinitely many solutions" if self.infinite else f"{len(self.solutions)} solutions",
        )

    def answer(self, query: AvoidanceQuery) -> OracleReply:
        if query.ring != self.ring or not eq_canonical_equal(query.equation, self.equation):
            raise UnsupportedQuery(f"this table answers for {self.equation} over {self.ring} only")
        for solution in self.solutions:
            if not query.is_excluded(solution):
                return OracleReply.solvable(solution)
        if self.infinite:
            return OracleReply.solvable()
        return OracleReply.unsolvable()


class UnivariateLinearOracle(Oracle):
    """Exact for a*x1 + b = 0 at arity 1 over any supported ring."""

    kind = OracleKind.UNIVARIATE_LINEAR

    def answer(self, query: AvoidanceQuery) -> OracleReply:
        equation = query.equation
        if equation.arity != 1 or equation.lhs.degree > 1:
            raise UnsupportedQuery(f"{equation} is not a univariate linear equation")
        coefficients = equation.lhs.coefficients
        a, b = coefficients.get((1,), 0), coefficients.get((0,), 0)
        if a != 0:
            root = QTuple.of(Rational.of(-b, a))
            if query.ring.contains(root[0]) and not query.is_excluded(root):
                return OracleReply.solvable(root)
            return OracleReply.unsolvable()
        if b != 0:
            return OracleReply.unsolvable()
        return OracleReply.solvable(_first_unexcluded(query.ring, query))


class BoundedSearchOracle(Oracle):
    """
    Scans surjection(ring, n, i) for i < bound.

    Unsolvable answers only hold when every solution is known to appear
    among the first `bound` enumerated tuples.
    """

    kind = OracleKind.BOUNDED_SEARCH

    def __init__(self, bound: int | None = None):
        self.bound = DEFAULT_CONFIG.search_bound if bound is None else bound
        if self.bound < 1:
            raise InvalidParameter(f"search bound must be positive, got {self.bound}")

    def answer(self, query: AvoidanceQuery) -> OracleReply:
        arity = query.equation.arity
        for i in range(self.bound):
            candidate = surjection(query.ring, arity, i)
            if query.equation.is_solution(candidate) and not query.is_excluded(candidate):
                logger.debug("bounded search found %s at index %d", candidate, i)
                return OracleReply.solvable(candidate)
        logger.warning(
            "no solution of %s among the first %d tuples; answering Unsolvable uncertified",
            query.equation,
            self.bound,
        )
        return OracleReply.unsolvable(certified=False)


def make_oracle(
    kind: OracleKind | str,
    equation: Equation | None = None,
    ring: RingSpec | None = None,
    solutions: Iterable[QTuple] = (),
    infinite: bool = False,
    bound: int | None = None,
) -> Oracle:
    """
    Build an oracle of the given kind.

    Args:
        kind: Oracle kind
        equation: Equation a table answers for
        ring: Ring a table answers for
        solutions: Exhaustive solution list (table)
        infinite: Claim that the equation has infinitely many solutions (table)
        bound: Number of enumerated tuples to scan (bounded-search)

    Raises:
        OracleValidationError: If a listed tuple is not a solution in the ring
    """
    kind = OracleKind(kind)
    if kind is OracleKind.TABLE:
        if equation is None or ring is None:
            raise InvalidParameter("a table oracle needs its equation and ring")
        return TableOracle(equation, ring, solutions, infinite)
    if kind is OracleKind.UNIVARIATE_LINEAR:
        return UnivariateLinearOracle()
    return BoundedSearchOracle(bound)


def _load_oracle_document(path: Path, equation: Equation, ring: RingSpec) -> Oracle:
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
        kind = OracleKind(document["kind"])
        solutions = [parse_tuple(text) for text in document.get("solutions", [])]
    except (OSError, ValueError, KeyError, TypeError, ParseError) as e:
        raise InvalidParameter(f"malformed oracle file {path}: {e}") from e
    return make_oracle(
        kind,
        equation,
        ring,
        solutions=solutions,
        infinite=bool(document.get("infinite", False)),
        bound=document.get("bound"),
    )


def load_oracle(spec: str, equation: Equation, ring: RingSpec) -> Oracle:
    """
    Build an oracle from its command-line form.

    Accepted forms: "table:v1,v2,..." (arity 1), "table:" (no solutions),
    "table:inf", "univariate-linear", "bounded-search[:B]", or the path of a
    JSON document {"kind", "solutions", "infinite", "bound"}.
    """
    name, _, params = spec.partition(":")
    if name == OracleKind.TABLE.value:
        if params.strip() == "inf":
            return make_oracle(OracleKind.TABLE, equation, ring, infinite=True)
        if equation.arity != 1:
            raise InvalidParameter("table:v1,v2 lists arity-1 solutions; use a JSON oracle file")
        values = [value for value in params.split(",") if value.strip()]
        solutions = [QTuple.of(parse_rational(value)) for value in values]
        return make_oracle(OracleKind.TABLE, equation, ring, solutions=solutions)
    if name == OracleKind.UNIVARIATE_LINEAR.value and not params:
        return make_oracle(OracleKind.UNIVARIATE_LINEAR)
    if name == OracleKind.BOUNDED_SEARCH.value:
        if not params:
            return make_oracle(OracleKind.BOUNDED_SEARCH)
        if not params.isdigit():
            raise InvalidParameter(f"bounded-search bound must be a positive integer, got {params!r}")
        return make_oracle(OracleKind.BOUNDED_SEARCH, bound=int(params))
    path = Path(spec)
    if path.is_file():
        return _load_oracle_document(path, equation, ring)
    raise InvalidParameter(
        f"unknown oracle {spec!r}; expected table:..., univariate-linear, bounded-search[:B] or a file"
    )


def membership_equation(a: int, b: int) -> Equation:
    """b*x1 - a = 0, solvable in R exactly when a/b is in R."""
    if b == 0:
        raise InvalidDenominator(f"cannot decide membership of {a}/{b}")
    lhs = Polynomial.constant(b) * Polynomial.variable(1) - Polynomial.constant(a)
    return Equation(lhs, 1)


def contains_via_oracle(oracle: Oracle, ring: RingSpec, a: int, b: int) -> bool:
    """
    Decide a/b in R by asking whether b*x1 - a = 0 is solvable in R.

    This is how a positive answer to H10(R) yields decidable membership.
    """
    reply = oracle.answer(AvoidanceQuery(membership_equation(a, b), ring, ()))
    return reply.answer is OracleAnswer.SOLVABLE
