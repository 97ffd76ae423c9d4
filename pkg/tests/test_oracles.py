import json
import logging

import pytest

from h10_py.core.codec import QTuple
from h10_py.core.exactnum import Rational
from h10_py.core.gadgets import AvoidanceQuery
from h10_py.core.parser import parse_equation
from h10_py.core.rings import RingSpec
from h10_py.engines.oracles import (
    BoundedSearchOracle,
    OracleKind,
    TableOracle,
    UnivariateLinearOracle,
    contains_via_oracle,
    load_oracle,
    make_oracle,
    membership_equation,
)
from h10_py.errors import (
    InvalidDenominator,
    InvalidParameter,
    OracleValidationError,
    UnsupportedQuery,
)
from h10_py.models import OracleAnswer

Z = RingSpec.integers()
Q = RingSpec.rationals()
Z_HALF = RingSpec.localization(2)
ROOTS = parse_equation("x1*(x1 - 1) = 0")


def query(text: str, ring: RingSpec, *excluded) -> AvoidanceQuery:
    return AvoidanceQuery(parse_equation(text), ring, tuple(QTuple.of(e) for e in excluded))


def test_table_oracle_validates_solutions():
    oracle = make_oracle(OracleKind.TABLE, ROOTS, Z, solutions=[QTuple.of(0), QTuple.of(1)])
    assert isinstance(oracle, TableOracle)
    with pytest.raises(OracleValidationError):
        make_oracle(OracleKind.TABLE, ROOTS, Z, solutions=[QTuple.of(2)])
    with pytest.raises(OracleValidationError):
        make_oracle(OracleKind.TABLE, parse_equation("2*x1 = 1"), Z, solutions=[QTuple.of(Rational.of(1, 2))])
    with pytest.raises(OracleValidationError):
        make_oracle(OracleKind.TABLE, ROOTS, Z, solutions=[QTuple.of(0, 0)])


def test_table_oracle_answers():
    oracle = TableOracle(ROOTS, Z, [QTuple.of(0), QTuple.of(1)])
    reply = oracle.answer(query("x1*(x1 - 1) = 0", Z, 0))
    assert reply.answer is OracleAnswer.SOLVABLE
    assert reply.witness == QTuple.of(1)
    assert oracle.answer(query("x1*(x1 - 1) = 0", Z, 0, 1)).answer is OracleAnswer.UNSOLVABLE
    # canonical equality is enough to be recognized
    assert oracle.answer(query("2*x1^2 - 2*x1 = 0", Z)).answer is OracleAnswer.SOLVABLE


def test_table_oracle_rejects_foreign_queries():
    oracle = TableOracle(ROOTS, Z, [QTuple.of(0), QTuple.of(1)])
    with pytest.raises(UnsupportedQuery):
        oracle.answer(query("x1 = 0", Z))
    with pytest.raises(UnsupportedQuery):
        oracle.answer(query("x1*(x1 - 1) = 0", Q))


def test_infinite_table_is_always_solvable():
    oracle = TableOracle(parse_equation("0 = 0"), Z, infinite=True)
    excluded = tuple(QTuple.of(k) for k in range(50))
    reply = oracle.answer(AvoidanceQuery(parse_equation("0 = 0"), Z, excluded))
    assert reply.answer is OracleAnswer.SOLVABLE


@pytest.mark.parametrize(
    "text, ring, excluded, answer",
    [
        ("2*x1 - 1 = 0", Z, (), OracleAnswer.UNSOLVABLE),
        ("2*x1 - 1 = 0", Z_HALF, (), OracleAnswer.SOLVABLE),
        ("2*x1 - 1 = 0", Z_HALF, (Rational.of(1, 2),), OracleAnswer.UNSOLVABLE),
        ("0 = 3", Q, (), OracleAnswer.UNSOLVABLE),
        ("0 = 0", Z, (0, 1, -1), OracleAnswer.SOLVABLE),
        ("3*x1 = 6", RingSpec.multiples(2), (), OracleAnswer.SOLVABLE),
        ("3*x1 = 6", RingSpec.multiples(4), (), OracleAnswer.UNSOLVABLE),
    ],
)
def test_univariate_linear_oracle(text, ring, excluded, answer):
    reply = UnivariateLinearOracle().answer(query(text, ring, *excluded))
    assert reply.answer is answer
    if reply.witness is not None:
        assert parse_equation(text).is_solution(reply.witness)
        assert reply.witness not in tuple(QTuple.of(e) for e in excluded)


def test_univariate_linear_oracle_rejects_other_equations():
    oracle = UnivariateLinearOracle()
    with pytest.raises(UnsupportedQuery):
        oracle.answer(query("x1^2 = 4", Z))
    with pytest.raises(UnsupportedQuery):
        oracle.answer(AvoidanceQuery(parse_equation("x1 + x2 = 0"), Z, ()))


def test_bounded_search_oracle(caplog):
    oracle = BoundedSearchOracle(100)
    reply = oracle.answer(query("x1^2 - 4 = 0", Z, 2))
    assert reply.answer is OracleAnswer.SOLVABLE
    assert reply.witness == QTuple.of(-2)
    assert reply.certified
    with caplog.at_level(logging.WARNING):
        reply = oracle.answer(query("x1^2 - 4 = 0", Z, 2, -2))
    assert reply.answer is OracleAnswer.UNSOLVABLE
    assert not reply.certified
    assert "uncertified" in caplog.text
    with pytest.raises(InvalidParameter):
        BoundedSearchOracle(0)


def test_load_oracle_forms(tmp_path):
    assert isinstance(load_oracle("table:0,1", ROOTS, Z), TableOracle)
    assert load_oracle("table:", parse_equation("x1^2 + 1 = 0"), Z).solutions == ()
    assert load_oracle("table:inf", parse_equation("0 = 0"), Z).infinite
    assert isinstance(load_oracle("univariate-linear", ROOTS, Z), UnivariateLinearOracle)
    assert load_oracle("bounded-search:25", ROOTS, Z).bound == 25
    assert isinstance(load_oracle("bounded-search", ROOTS, Z), BoundedSearchOracle)

    document = tmp_path / "circle.json"
    circle = parse_equation("x1^2 + x2^2 = 1")
    document.write_text(
        json.dumps({"kind": "table", "solutions": ["(1, 0)", "(-1, 0)", "(0, 1)", "(0, -1)"]})
    )
    oracle = load_oracle(str(document), circle, Z)
    assert isinstance(oracle, TableOracle)
    assert len(oracle.solutions) == 4


def test_load_oracle_errors(tmp_path):
    with pytest.raises(InvalidParameter):
        load_oracle("table:0,1", parse_equation("x1*x2 = 0"), Z)
    with pytest.raises(InvalidParameter):
        load_oracle("bounded-search:ten", ROOTS, Z)
    with pytest.raises(InvalidParameter):
        load_oracle("coin-flip", ROOTS, Z)
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(InvalidParameter):
        load_oracle(str(broken), ROOTS, Z)
    with pytest.raises(OracleValidationError):
        load_oracle("table:0,2", ROOTS, Z)


def test_contains_via_oracle_agrees_with_ring_model(rng):
    oracle = UnivariateLinearOracle()
    rings = (Z, Q, Z_HALF, RingSpec.multiples(3), RingSpec.localization(6))
    for _ in range(200):
        a, b = rng.randint(-30, 30), rng.choice([d for d in range(-12, 13) if d])
        for ring in rings:
            expected = ring.contains(Rational.of(a, b))
            assert contains_via_oracle(oracle, ring, a, b) is expected


def test_membership_equation():
    assert str(membership_equation(3, 4)) == "4*x1 - 3 = 0 @arity=1"
    with pytest.raises(InvalidDenominator):
        membership_equation(1, 0)
