import io
import json
from math import isqrt

import pytest

from h10_py.core.codec import QTuple
from h10_py.core.exactnum import Rational
from h10_py.core.gadgets import add_dummy
from h10_py.core.parser import parse_equation
from h10_py.core.poly import Polynomial, eq_canonical_equal
from h10_py.core.rings import RingSpec
from h10_py.engines import (
    BoundedSearchOracle,
    CuratedList,
    TableOracle,
    TraceWriter,
    UnivariateLinearOracle,
    decide_solvability,
    dovetail_search,
    load_list,
    quadratic_universe,
    semidecide_finite,
)
from h10_py.engines.lists import resolve_list
from h10_py.errors import InvalidIndex, InvalidParameter, ListValidationError, NotASubring
from h10_py.models import BudgetExhausted, Halted, Verdict

Z = RingSpec.integers()
Q = RingSpec.rationals()


def test_dovetail_search_examples():
    outcome = dovetail_search(parse_equation("x1^2 - 4 = 0"), Z, 1000)
    assert outcome == Halted(Verdict.SOLVABLE, outcome.evidence)
    assert outcome.evidence.witness == QTuple.of(2)
    assert outcome.evidence.index == 8

    assert dovetail_search(parse_equation("x1^2 + 1 = 0"), Z, 1000) == BudgetExhausted(1000, 999)

    outcome = dovetail_search(parse_equation("2*x1 - 1 = 0"), RingSpec.localization(2), 10**6)
    assert isinstance(outcome, Halted)
    assert outcome.evidence.witness == QTuple.of(Rational.of(1, 2))
    assert outcome.evidence.index == 14


def test_dovetail_search_over_naturals():
    outcome = dovetail_search(parse_equation("x1 + x2 = 2"), RingSpec.naturals(), 2000)
    assert isinstance(outcome, Halted)
    # tau(2) = 1 and 3^2 * 11^2 is the first value decoding to (2, 2)
    assert outcome.evidence.witness == QTuple.of(1, 1)
    assert outcome.evidence.index == 1088


def test_budget_must_be_positive():
    with pytest.raises(InvalidParameter):
        dovetail_search(parse_equation("x1 = 0"), Z, 0)


def table(text: str, *solutions) -> TableOracle:
    return TableOracle(parse_equation(text), Z, [QTuple.of(*s) for s in solutions])


def test_semidecide_finite_examples():
    outcome = semidecide_finite(parse_equation("x1*(x1 - 1) = 0"), Z, table("x1*(x1-1)=0", (0,), (1,)), m=1, budget=10)
    assert isinstance(outcome, Halted)
    assert outcome.verdict is Verdict.FINITE
    assert outcome.evidence.index == 2
    assert outcome.evidence.excluded == (QTuple.of(0), QTuple.of(0), QTuple.of(1))

    infinite = TableOracle(parse_equation("0 = 0"), Z, infinite=True)
    assert isinstance(semidecide_finite(parse_equation("0 = 0"), Z, infinite, m=1, budget=50), BudgetExhausted)

    outcome = semidecide_finite(parse_equation("x1^2 + 1 = 0"), Z, table("x1^2 + 1 = 0"), m=1)
    assert isinstance(outcome, Halted)
    assert outcome.evidence.index == 0


FINITE_SUITE = [
    ("x1^2 + 1 = 0", [], 0),
    ("2*x1 - 1 = 0", [], 0),
    ("x1 = 0", [(0,)], 0),
    ("x1 + 1 = 0", [(-1,)], 5),
    ("x1 - 3 = 0", [(3,)], 26),
    ("x1*(x1 - 1) = 0", [(0,), (1,)], 2),
    ("x1^2 - 1 = 0", [(1,), (-1,)], 5),
    ("x1^2 - 4 = 0", [(2,), (-2,)], 17),
    ("(x1 - 1)*(x1 + 1)*(x1 - 2)*(x1 + 2)*x1 = 0", [(0,), (1,), (-1,), (2,), (-2,)], 17),
    ("x1^2 + x2^2 = 0", [(0, 0)], 0),
]

INFINITE_SUITE = ["0 = 0", "x1*x2 = 0 @arity=2", "x1 - x2 = 0", "0*x1 = 0 @arity=3"]


@pytest.mark.parametrize("text, solutions, halt", FINITE_SUITE, ids=[t for t, _, _ in FINITE_SUITE])
def test_finite_suite_halts_with_all_solutions_excluded(text, solutions, halt):
    oracle = table(text, *solutions)
    outcome = semidecide_finite(parse_equation(text), Z, oracle, budget=1000)
    assert isinstance(outcome, Halted)
    assert outcome.evidence.index == halt
    for solution in solutions:
        assert QTuple.of(*solution) in outcome.evidence.excluded


@pytest.mark.parametrize("text", INFINITE_SUITE)
def test_infinite_suite_exhausts_budget(text):
    equation = parse_equation(text)
    oracle = TableOracle(equation, Z, infinite=True)
    assert semidecide_finite(equation, Z, oracle, budget=1000) == BudgetExhausted(1000, 999)


def test_semidecide_finite_is_monotone():
    equation = parse_equation("x1^2 - 1 = 0")
    oracle = BoundedSearchOracle(200)
    outcome = semidecide_finite(equation, Z, oracle, budget=100)
    assert isinstance(outcome, Halted)
    for budget in range(outcome.evidence.index + 1, outcome.evidence.index + 5):
        again = semidecide_finite(equation, Z, oracle, budget=budget)
        assert again == outcome


def test_semidecide_finite_preconditions():
    oracle = UnivariateLinearOracle()
    with pytest.raises(NotASubring):
        semidecide_finite(parse_equation("x1 = 0"), RingSpec.naturals(), oracle)
    with pytest.raises(InvalidParameter):
        semidecide_finite(parse_equation("x1 = 0"), RingSpec.multiples(2), oracle, m=1)
    with pytest.raises(InvalidParameter):
        semidecide_finite(parse_equation("x1 = 0"), Z, oracle, m=0)


def test_semidecide_finite_with_linear_oracle_over_localization():
    ring = RingSpec.localization(2)
    outcome = semidecide_finite(parse_equation("2*x1 - 1 = 0"), ring, UnivariateLinearOracle())
    assert isinstance(outcome, Halted)
    # 1/2 first appears at index 14
    assert outcome.evidence.index == 14


def test_flattened_trace(tmp_path):
    path = tmp_path / "trace.tsv"
    with TraceWriter.open(path) as writer:
        semidecide_finite(
            parse_equation("x1*(x1 - 1) = 0"),
            Z,
            table("x1*(x1 - 1) = 0", (0,), (1,)),
            budget=10,
            trace=writer,
            flatten=True,
        )
    lines = path.read_text().splitlines()
    assert len(lines) == 3
    kinds, indices, details, answers = zip(*(line.split("\t") for line in lines))
    assert kinds == ("query",) * 3
    assert indices == ("0", "1", "2")
    assert answers == ("solvable", "solvable", "unsolvable")
    assert all("@arity=6" in detail for detail in details)


def test_quadratic_universe():
    listing = quadratic_universe()
    assert len(listing) == 17
    assert listing.equation_at(10) == parse_equation("x1^2 - 2 = 0 @arity=2")
    assert listing.equation_at(0) == parse_equation("x1^2 + 10 = 0 @arity=2")
    assert listing.equation_at(17) == listing.equation_at(0)
    assert listing.index_of(parse_equation("x1^2 - 3 = 0 @arity=2")) == 11
    assert listing.index_of(parse_equation("x1^2 - 4 = 0 @arity=2")) is None
    with pytest.raises(InvalidIndex):
        listing.equation_at(-1)


def test_quadratic_universe_has_no_rational_solutions():
    quadratic_universe().validate(Q, 500)


def test_list_validation_catches_solvable_entries():
    listing = CuratedList("bad", (parse_equation("x1^2 - 4 = 0"),))
    with pytest.raises(ListValidationError):
        listing.validate(Z, 100)
    listing.validate(Z, 100, max_solutions=2)
    with pytest.raises(ListValidationError):
        CuratedList("empty", ())


def test_load_and_resolve_list(tmp_path):
    document = tmp_path / "list.json"
    document.write_text(json.dumps({"universe": "linear", "equations": ["2*x1 = 1 @arity=2"]}))
    listing = load_list(document)
    assert listing.universe == "linear"
    assert listing.equation_at(5) == parse_equation("2*x1 - 1 = 0 @arity=2")
    assert resolve_list(str(document)) == listing
    assert len(resolve_list("builtin:quadratic")) == 17
    with pytest.raises(InvalidParameter):
        resolve_list("builtin:cubic")
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps({"equations": ["x1 = 0"]}))
    with pytest.raises(ListValidationError):
        load_list(broken)


@pytest.mark.parametrize(
    "text, verdict, index",
    [
        ("x1^2 - 1 = 0", Verdict.SOLVABLE, 2),
        ("x1^2 - 2 = 0", Verdict.UNSOLVABLE, 10),
        ("x1 - x1 = 0", Verdict.SOLVABLE, 0),
        ("2*x1^2 + 20 = 0", Verdict.UNSOLVABLE, 0),
    ],
)
def test_decide_solvability_examples(text, verdict, index):
    outcome = decide_solvability(parse_equation(text), Q, quadratic_universe(), budget=100)
    assert isinstance(outcome, Halted)
    assert outcome.verdict is verdict
    assert outcome.evidence.index == index


@pytest.mark.parametrize("a", range(-10, 11))
def test_decide_solvability_quadratic_suite(a):
    equation = Polynomial.variable(1) ** 2 - Polynomial.constant(a)
    eq = parse_equation(f"{equation} = 0")
    listing = quadratic_universe()
    outcome = decide_solvability(eq, Q, listing, budget=100)
    assert isinstance(outcome, Halted)
    solvable = a >= 0 and isqrt(a) ** 2 == a
    if solvable:
        assert outcome.verdict is Verdict.SOLVABLE
        assert eq.is_solution(outcome.evidence.witness)
    else:
        assert outcome.verdict is Verdict.UNSOLVABLE
        assert eq_canonical_equal(add_dummy(eq), listing.equation_at(outcome.evidence.matched))


def test_decide_solvability_exhausts_outside_the_universe():
    outcome = decide_solvability(parse_equation("x1^2 - 11 = 0"), Q, quadratic_universe(), budget=50)
    assert outcome == BudgetExhausted(50, 49)


def test_decide_solvability_is_deterministic():
    eq = parse_equation("x1^2 - 9 = 0")
    first = decide_solvability(eq, Q, quadratic_universe(), budget=100)
    assert decide_solvability(eq, Q, quadratic_universe(), budget=100) == first
    assert first.evidence.index == 26


def test_decide_solvability_trace():
    stream = io.StringIO()
    decide_solvability(parse_equation("x1^2 + 10 = 0"), Q, quadratic_universe(), trace=TraceWriter(stream))
    assert stream.getvalue().splitlines() == [
        "eval\t0\t(0)\tnonzero",
        "match\t0\tx1^2 + 10 = 0 @arity=2\tmatch",
    ]


def test_trace_writer_collapses_whitespace():
    stream = io.StringIO()
    writer = TraceWriter(stream)
    writer.record("eval", 3, "x1 +\n 1\t= 0", "non zero")
    assert stream.getvalue() == "eval\t3\tx1 + 1 = 0\tnon zero\n"
    assert writer.lines == 1
