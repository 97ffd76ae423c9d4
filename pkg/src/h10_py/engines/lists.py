"""Curated enumerations of equations with finitely many solutions."""

import json
import logging
from dataclasses import dataclass
from math import isqrt
from pathlib import Path
from typing import Protocol

from h10_py.core.codec import surjection
from h10_py.core.parser import parse_equation
from h10_py.core.poly import Equation, Polynomial, eq_canonical_equal
from h10_py.core.rings import RingSpec
from h10_py.errors import InvalidIndex, InvalidParameter, ListValidationError, ParseError

logger = logging.getLogger(__name__)

BUILTIN_PREFIX = "builtin:"


class FiniteListEnumerator(Protocol):
    """A total computable sequence i -> S_i of finite-solution equations."""

    universe: str

    def equation_at(self, i: int) -> Equation: ...


@dataclass(frozen=True)
class CuratedList:
    """
    A finite, non-empty list of equations read as a total sequence by cycling.

    `universe` describes the equations the list is declared complete for.
    """

    universe: str
    equations: tuple[Equation, ...]

    def __post_init__(self):
        if not self.equations:
            raise ListValidationError(f"list for {self.universe!r} has no equations")

    def __len__(self) -> int:
        return len(self.equations)

    def equation_at(self, i: int) -> Equation:
        if i < 0:
            raise InvalidIndex(f"list indices are non-negative, got {i}")
        return self.equations[i % len(self.equations)]

    def index_of(self, equation: Equation) -> int | None:
        """First list index holding an equation canonically equal to `equation`."""
        for i, candidate in enumerate(self.equations):
            if eq_canonical_equal(candidate, equation):
                return i
        return None

    def validate(self, ring: RingSpec, bound: int, max_solutions: int = 0) -> None:
        """
        Count distinct solutions of each equation among the first `bound`
        tuples of the ring's enumeration.

        Raises:
            ListValidationError: If some equation has more than `max_solutions`
        """
        if bound < 1:
            raise InvalidParameter(f"validation bound must be positive, got {bound}")
        for position, equation in enumerate(self.equations):
            found = set()
            for i in range(bound):
                candidate = surjection(ring, equation.arity, i)
                if equation.is_solution(candidate):
                    found.add(candidate)
            if len(found) > max_solutions:
                raise ListValidationError(
                    f"entry {position} ({equation}) has {len(found)} solutions in {ring} "
                    f"among the first {bound} tuples; at most {max_solutions} allowed"
                )
        logger.info(
            "list %r validated over %s: %d equations, bound %d",
            self.universe,
            ring,
            len(self.equations),
            bound,
        )


def quadratic_universe(lo: int = -10, hi: int = 10) -> CuratedList:
    """
    The equations x1^2 - a = 0 @arity=2 for lo <= a <= hi with a not a
    non-negative square, in increasing order of a.

    Over Q these are exactly the dummy-extended members of {x1^2 - a = 0}
    without solutions, so the list is complete for that universe.
    """
    if lo > hi:
        raise InvalidParameter(f"empty range [{lo}, {hi}]")
    square = Polynomial.variable(1, 2) ** 2
    equations = tuple(
        Equation(square - Polynomial.constant(a, 2), 2)
        for a in range(lo, hi + 1)
        if a < 0 or isqrt(a) ** 2 != a
    )
    return CuratedList(f"x1^2 - a = 0 @arity=2, {lo} <= a <= {hi}", equations)


BUILTIN_LISTS = {
    "quadratic": quadratic_universe,
}


def load_list(path: str | Path) -> CuratedList:
    """Read a {"universe": str, "equations": [str, ...]} document."""
    path = Path(path)
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
        universe = str(document["universe"])
        equations = tuple(parse_equation(text) for text in document["equations"])
    except (OSError, ValueError, KeyError, TypeError, ParseError) as e:
        raise ListValidationError(f"malformed list file {path}: {e}") from e
    return CuratedList(universe, equations)


def resolve_list(spec: str) -> CuratedList:
    """"builtin:<name>" or the path of a list document."""
    if spec.startswith(BUILTIN_PREFIX):
        name = spec[len(BUILTIN_PREFIX):]
        if name not in BUILTIN_LISTS:
            raise InvalidParameter(
                f"unknown builtin list {name!r}; available: {', '.join(sorted(BUILTIN_LISTS))}"
            )
        return BUILTIN_LISTS[name]()
    return load_list(spec)
