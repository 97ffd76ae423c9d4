from h10_py.engines.flowcharts import decide_solvability, semidecide_finite
from h10_py.engines.lists import CuratedList, FiniteListEnumerator, load_list, quadratic_universe
from h10_py.engines.oracles import (
    BoundedSearchOracle,
    Oracle,
    OracleKind,
    OracleReply,
    TableOracle,
    UnivariateLinearOracle,
    contains_via_oracle,
    load_oracle,
    make_oracle,
)
from h10_py.engines.search import dovetail_search
from h10_py.engines.trace import TraceWriter

__all__ = [
    "BoundedSearchOracle",
    "CuratedList",
    "FiniteListEnumerator",
    "Oracle",
    "OracleKind",
    "OracleReply",
    "TableOracle",
    "TraceWriter",
    "UnivariateLinearOracle",
    "contains_via_oracle",
    "decide_solvability",
    "dovetail_search",
    "load_list",
    "load_oracle",
    "make_oracle",
    "quadratic_universe",
    "semidecide_finite",
]
