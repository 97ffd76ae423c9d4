import logging

from h10_py.configs import DEFAULT_CONFIG
from h10_py.core.codec import surjection
from h10_py.core.poly import Equation
from h10_py.core.rings import RingSpec
from h10_py.engines.trace import TraceWriter
from h10_py.errors import InvalidParameter
from h10_py.models import BudgetExhausted, EngineOutcome, Evidence, Halted, Verdict

logger = logging.getLogger(__name__)


def resolve_budget(budget: int | None) -> int:
    budget = DEFAULT_CONFIG.default_budget if budget is None else budget
    if budget < 1:
        raise InvalidParameter(f"budget must be positive, got {budget}")
    return budget


def dovetail_search(
    eq: Equation,
    ring: RingSpec,
    budget: int | None = None,
    trace: TraceWriter | None = None,
) -> EngineOutcome:
    """
    Evaluate eq at surjection(ring, arity, i) for i = 0 .. budget - 1.

    Returns:
        Halted(SOLVABLE) with the first witness and its index, or BudgetExhausted
    """
    budget = resolve_budget(budget)
    logger.info("searching %s over %s, budget %d", eq, ring, budget)
    for i in range(budget):
        candidate = surjection(ring, eq.arity, i)
        value = eq.evaluate(candidate)
        if trace is not None:
            trace.record("eval", i, candidate, value)
        if not value:
            logger.info("witness %s found at index %d", candidate, i)
            return Halted(Verdict.SOLVABLE, Evidence(i, witness=candidate))
    logger.info("search exhausted after %d indices", budget)
    return BudgetExhausted(budget, budget - 1)
