"""Outcome models shared by the engines and the CLI."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Union

from h10_py.core.codec import QTuple


class Verdict(str, Enum):
    """What a halted engine concluded."""

    SOLVABLE = "solvable"
    UNSOLVABLE = "unsolvable"
    FINITE = "finite"


class OracleAnswer(str, Enum):
    SOLVABLE = "solvable"
    UNSOLVABLE = "unsolvable"


@dataclass(frozen=True)
class Evidence:
    """
    Checkable support for a verdict.

    `index` is the halt index (k for the finite-solutions engine, i for
    the solvability engine and witness search). `witness` re-evaluates to 0,
    `excluded` is the excluded set at halt and `matched` the list index that
    matched the dummy-extended equation.
    """

    index: int
    witness: QTuple | None = None
    excluded: tuple[QTuple, ...] = field(default_factory=tuple)
    matched: int | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "witness": None if self.witness is None else str(self.witness),
            "excluded": [str(point) for point in self.excluded],
            "matched": self.matched,
        }


@dataclass(frozen=True)
class Halted:
    verdict: Verdict
    evidence: Evidence

    def __str__(self) -> str:
        if self.verdict is Verdict.FINITE:
            return f"finite k={self.evidence.index}"
        if self.evidence.witness is not None:
            return f"{self.verdict.value} {self.evidence.witness} i={self.evidence.index}"
        return f"{self.verdict.value} i={self.evidence.index}"


@dataclass(frozen=True)
class BudgetExhausted:
    """The budget ran out before any verdict; not a verdict itself."""

    steps: int
    last_index: int | None

    def __str__(self) -> str:
        return "exhausted"


EngineOutcome = Union[Halted, BudgetExhausted]
