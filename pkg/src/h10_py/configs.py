"""
Setting                 Environment variable    Default
Default engine budget   H10_DEFAULT_BUDGET      1000
Largest exponent        H10_MAX_EXPONENT        64
Bounded-search bound    H10_SEARCH_BOUND        1000
CLI log level           H10_LOG_LEVEL           WARNING

Budgets count oracle queries for the finite-solutions engine and
enumeration indices for the solvability engine and witness search.
"""

import os
from dataclasses import dataclass


@dataclass
class EngineConfig:
    """
    Configuration shared by the parser, the engines and the CLI.
    """

    default_budget: int
    max_exponent: int
    search_bound: int
    log_level: str


DEFAULT_CONFIG = EngineConfig(
    default_budget=int(os.environ.get("H10_DEFAULT_BUDGET", "1000")),
    max_exponent=int(os.environ.get("H10_MAX_EXPONENT", "64")),
    search_bound=int(os.environ.get("H10_SEARCH_BOUND", "1000")),
    log_level=os.environ.get("H10_LOG_LEVEL", "WARNING"),
)
