"""
Text grammar for Diophantine equations and rational tuples.

    equation := expr "=" expr [ "@arity=" integer ]
    expr     := term { ("+" | "-") term }
    term     := signed { "*" signed }
    signed   := { "+" | "-" } power
    power    := atom { "^" exponent }
    atom     := integer | variable | "(" expr ")"
    variable := "x1" | "x2" | ...

Exponents are non-negative integer literals and associate to the right.
Coefficients are integer literals; rational constants are rejected.
"""

import logging
from dataclasses import dataclass
from functools import reduce

import pyparsing as pp

from h10_py.configs import DEFAULT_CONFIG
from h10_py.core.codec import QTuple
from h10_py.core.exactnum import Rational
from h10_py.core.poly import Equation, Polynomial
from h10_py.errors import (
    EquationSyntaxError,
    ExponentError,
    ForcedArityError,
    LexicalError,
    ParseError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SourceSpan:
    """UTF-8 byte offsets [start, end) into the input text."""

    start: int
    end: int

    @classmethod
    def from_chars(cls, text: str, start: int, end: int) -> "SourceSpan":
        end = min(max(end, start), len(text))
        start = min(start, end)
        return cls(len(text[:start].encode()), len(text[:end].encode()))


# characters that can start or continue a lexeme somewhere in the grammar
_ALPHABET = frozenset("0123456789x@+-*^()=/,. \t\r\n")


@dataclass(frozen=True)
class _ArityClause:
    value: int
    start: int
    end: int


def _literal_value(s: str, loc: int, literal: str, error: type[ParseError]) -> int:
    try:
        return int(literal)
    except ValueError as e:
        raise error(
            f"literal of {len(literal)} characters cannot be read as an integer",
            SourceSpan.from_chars(s, loc, loc + len(literal)),
        ) from e


def _integer_action(s: str, loc: int, toks: pp.ParseResults) -> Polynomial:
    return Polynomial.constant(_literal_value(s, loc, toks[0], LexicalError))


def _variable_action(s: str, loc: int, toks: pp.ParseResults) -> Polynomial:
    lexeme = toks[0]
    if len(lexeme) < 2 or lexeme[1] == "0":
        raise LexicalError(
            f"invalid variable {lexeme!r}; variables are x1, x2, ...",
            SourceSpan.from_chars(s, loc, loc + len(lexeme)),
        )
    return Polynomial.variable(_literal_value(s, loc + 1, lexeme[1:], LexicalError))


def _exponent_action(s: str, loc: int, toks: pp.ParseResults) -> int:
    literal = toks[0]
    span = SourceSpan.from_chars(s, loc, loc + len(literal))
    if not literal.isdigit():
        raise ExponentError(f"exponent {literal!r} is not a non-negative integer literal", span)
    value = _literal_value(s, loc, literal, ExponentError)
    if value > DEFAULT_CONFIG.max_exponent:
        raise ExponentError(
            f"exponent {value} exceeds the limit {DEFAULT_CONFIG.max_exponent}", span
        )
    return value


def _power_action(s: str, loc: int, toks: pp.ParseResults) -> Polynomial:
    base, *exponents = toks
    if not exponents:
        return base
    exponent = exponents[-1]
    for lower in reversed(exponents[:-1]):
        exponent = lower**exponent
        if exponent > DEFAULT_CONFIG.max_exponent:
            raise ExponentError(
                f"exponent tower exceeds the limit {DEFAULT_CONFIG.max_exponent}",
                SourceSpan.from_chars(s, loc, loc + 1),
            )
    return base**exponent


def _signed_action(s: str, loc: int, toks: pp.ParseResults) -> Polynomial:
    *signs, operand = toks
    if signs.count("-") % 2:
        return -operand
    return operand


def _term_action(s: str, loc: int, toks: pp.ParseResults) -> Polynomial:
    return reduce(lambda left, right: left * right, toks)


def _expr_action(s: str, loc: int, toks: pp.ParseResults) -> Polynomial:
    result = toks[0]
    for operator, operand in zip(toks[1::2], toks[2::2]):
        result = result + operand if operator == "+" else result - operand
    return result


def _arity_action(s: str, loc: int, toks: pp.ParseResults) -> _ArityClause:
    return _ArityClause(_literal_value(s, loc, toks[0], ForcedArityError), loc, loc + len(toks[0]))


def _build_equation_grammar() -> pp.ParserElement:
    integer = pp.Regex(r"\d+").set_name("integer").set_parse_action(_integer_action)
    variable = pp.Regex(r"x\d*").set_name("variable").set_parse_action(_variable_action)
    exponent = (
        pp.Regex(r"[-+]?\d+(?:\.\d*)?(?:/\d+)?").set_name("exponent")
        .set_parse_action(_exponent_action)
    )
    arity_value = pp.Regex(r"\d+").set_name("arity").set_parse_action(_arity_action)

    # "-" stops backtracking: once an operator is read its operand is mandatory
    expr = pp.Forward().set_name("expression")
    atom = integer | variable | pp.Suppress("(") - expr - pp.Suppress(")")
    power = (atom + pp.ZeroOrMore(pp.Suppress("^") - exponent)).set_parse_action(_power_action)
    signed = (pp.ZeroOrMore(pp.one_of("+ -")) + power).set_parse_action(_signed_action)
    term = (signed + pp.ZeroOrMore(pp.Suppress("*") - signed)).set_parse_action(_term_action)
    expr <<= (term + pp.ZeroOrMore(pp.one_of("+ -") - term)).set_parse_action(_expr_action)

    arity_clause = pp.Suppress(pp.Literal("@arity")) - pp.Suppress("=") - arity_value
    return expr + pp.Suppress("=") - expr + pp.Opt(arity_clause) + pp.StringEnd()


def _numerator_action(s: str, loc: int, toks: pp.ParseResults) -> int:
    return _literal_value(s, loc, toks[0], LexicalError)


def _rational_action(s: str, loc: int, toks: pp.ParseResults) -> Rational:
    return Rational.of(toks["hat"], toks.get("bar", 1))


def _build_rational_grammar() -> pp.ParserElement:
    numerator = pp.Regex(r"[-+]?\d+").set_name("numerator").set_parse_action(_numerator_action)
    denominator = pp.Regex(r"\d+").set_name("denominator").set_parse_action(_numerator_action)
    return (
        (numerator("hat") + pp.Opt(pp.Suppress("/") - denominator("bar")))
        .set_name("rational")
        .set_parse_action(_rational_action)
    )


_EQUATION = _build_equation_grammar()

_RATIONAL = _build_rational_grammar()
_RATIONAL_ALONE = _RATIONAL + pp.StringEnd()
_TUPLE = pp.Suppress("(") - pp.DelimitedList(_RATIONAL) - pp.Suppress(")") + pp.StringEnd()


def _syntax_error(text: str, error: pp.ParseBaseException) -> ParseError:
    loc = min(error.loc, len(text))
    span = SourceSpan.from_chars(text, loc, loc + 1)
    if loc >= len(text):
        return EquationSyntaxError("unexpected end of input", span)
    if text[loc] not in _ALPHABET:
        return LexicalError(f"unexpected character {text[loc]!r}", span)
    if text[loc] == "/":
        return EquationSyntaxError(
            "rational constants are not supported; coefficients are integers", span
        )
    return EquationSyntaxError(f"unexpected {text[loc]!r}", span)


def parse_equation(text: str) -> Equation:
    """
    Parse "LHS = RHS [@arity=k]" into the equation LHS - RHS = 0.

    The arity is the largest of the largest variable index, the forced
    arity and 1.

    Raises:
        LexicalError, EquationSyntaxError, ExponentError, ForcedArityError
    """
    try:
        parsed = _EQUATION.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        raise _syntax_error(text, e) from e
    except RecursionError as e:
        start = max(text.find("("), 0)
        raise EquationSyntaxError(
            "parentheses are nested too deeply", SourceSpan.from_chars(text, start, start + 1)
        ) from e
    lhs, rhs, *rest = parsed
    difference = lhs - rhs
    used = difference.max_variable
    arity = max(used, 1)
    if rest:
        clause: _ArityClause = rest[0]
        if clause.value < used:
            raise ForcedArityError(
                f"@arity={clause.value} is below the largest variable index x{used}",
                SourceSpan.from_chars(text, clause.start, clause.end),
            )
        arity = max(arity, clause.value)
    logger.debug("parsed %r as arity %d", text, arity)
    return Equation(difference.pad(arity), arity)


def render_equation(equation: Equation) -> str:
    """Canonical "P = 0 @arity=k" text."""
    return str(equation)


def parse_rational(text: str) -> Rational:
    """Parse "a/b" or "a"; the sign attaches to the numerator."""
    try:
        return _RATIONAL_ALONE.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as e:
        raise _syntax_error(text, e) from e


def parse_tuple(text: str) -> QTuple:
    """Parse "(a/b, c, ...)"."""
    try:
        parsed = _TUPLE.parse_string(text, parse_all=True)
    except pp.ParseBaseException as e:
        loc = min(e.loc, len(text))
        raise EquationSyntaxError(
            f"malformed tuple {text!r}", SourceSpan.from_chars(text, loc, loc + 1)
        ) from e
    return QTuple(tuple(parsed))


def render_tuple(point: QTuple) -> str:
    return str(point)
