"""
The finite-solutions semi-decider and the solvability decider.

semidecide_finite halts exactly when D = 0 has finitely many solutions in R,
given an oracle for solvability outside finite sets. decide_solvability
always halts when the list of finite-solution equations is complete for a
universe containing D + 0*x_{n+1}.
"""

import logging

from h10_py.core.codec import QTuple, surjection
from h10_py.core.exactnum import Rational
from h10_py.core.gadgets import AvoidanceQuery, add_dummy
from h10_py.core.poly import Equation, eq_canonical_equal
from h10_py.core.rings import RingSpec, find_nonzero_integer
from h10_py.engines.lists import FiniteListEnumerator
from h10_py.engines.oracles import Oracle
from h10_py.engines.search import resolve_budget
from h10_py.engines.trace import TraceWriter
from h10_py.errors import InvalidParameter
from h10_py.models import (
    BudgetExhausted,
    EngineOutcome,
    Evidence,
    Halted,
    OracleAnswer,
    Verdict,
)

logger = logging.getLogger(__name__)


def _query_detail(query: AvoidanceQuery, m: int, flatten: bool) -> str:
    if flatten:
        return f"{query} | {query.flatten(m)}"
    return str(query)


def semidecide_finite(
    eq: Equation,
    ring: RingSpec,
    oracle: Oracle,
    m: int | None = None,
    budget: int | None = None,
    trace: TraceWriter | None = None,
    flatten: bool = False,
) -> EngineOutcome:
    """
    For k = 0, 1, 2, ... ask whether eq is solvable outside {theta(0), ..., theta(k)},
    theta(i) = surjection(ring, n, i), and halt on the first Unsolvable.

    Args:
        eq: Equation of arity n
        ring: Non-zero subring of Q
        oracle: Answers avoidance queries
        m: Non-zero integer of the ring; found directly when omitted
        budget: Maximum number of oracle queries
        trace: Optional step trace
        flatten: Put the flattened avoidance equation in the trace

    Returns:
        Halted(FINITE) with the halt index and excluded set, or BudgetExhausted
    """
    ring.require_subring()
    if m is None:
        m = find_nonzero_integer(ring)
    if m == 0 or not ring.contains(Rational(m)):
        raise InvalidParameter(f"m = {m} must be a non-zero integer of {ring}")
    budget = resolve_budget(budget)
    logger.info("finite-solutions check of %s over %s, m=%d, budget %d", eq, ring, m, budget)

    excluded: list[QTuple] = []
    for k in range(budget):
        excluded.append(surjection(ring, eq.arity, k))
        query = AvoidanceQuery(eq, ring, tuple(excluded))
        reply = oracle.answer(query)
        if trace is not None:
            trace.record("query", k, _query_detail(query, m, flatten), reply.answer.value)
        if reply.witness is not None:
            logger.debug("k=%d: solution %s outside the excluded set", k, reply.witness)
        if reply.answer is OracleAnswer.UNSOLVABLE:
            if not reply.certified:
                logger.warning("halting on an uncertified Unsolvable answer at k=%d", k)
            logger.info("halted: finitely many solutions, k=%d", k)
            return Halted(Verdict.FINITE, Evidence(k, excluded=query.excluded))
    logger.info("budget of %d queries exhausted", budget)
    return BudgetExhausted(budget, budget - 1)


def decide_solvability(
    eq: Equation,
    ring: RingSpec,
    enumerator: FiniteListEnumerator,
    budget: int | None = None,
    trace: TraceWriter | None = None,
) -> EngineOutcome:
    """
    For i = 0, 1, 2, ...: halt Solvable if phi(i) solves eq, otherwise halt
    Unsolvable if eq + 0*x_{n+1} matches the list entry S_i.

    The witness check runs before the list check at each index.
    """
    budget = resolve_budget(budget)
    dummy = add_dummy(eq)
    logger.info(
        "solvability of %s over %s against %r, budget %d", eq, ring, enumerator.universe, budget
    )
    for i in range(budget):
        candidate = surjection(ring, eq.arity, i)
        solved = eq.is_solution(candidate)
        if trace is not None:
            trace.record("eval", i, candidate, "zero" if solved else "nonzero")
        if solved:
            logger.info("halted: solvable, witness %s at i=%d", candidate, i)
            return Halted(Verdict.SOLVABLE, Evidence(i, witness=candidate))
        entry = enumerator.equation_at(i)
        matched = eq_canonical_equal(dummy, entry)
        if trace is not None:
            trace.record("match", i, entry, "match" if matched else "differ")
        if matched:
            logger.info("halted: unsolvable, list entry %d matches %s", i, dummy)
            return Halted(Verdict.UNSOLVABLE, Evidence(i, matched=i))
        logger.debug("i=%d: no witness, no match", i)
    logger.info("budget of %d indices exhausted", budget)
    return BudgetExhausted(budget, budget - 1)
