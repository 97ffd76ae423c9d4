"""
Command-line front end.

Exit codes: 0 on success or a verdict, 1 on usage, parse and validation
errors, 2 when an engine exhausts its budget.
"""

import json
import logging
import sys
from collections.abc import Callable
from contextlib import nullcontext
from dataclasses import dataclass
from typing import Any, List, Optional

import typer

from h10_py.configs import DEFAULT_CONFIG
from h10_py.core.codec import QTuple, decode_tuple, encode_tuple, preimage, surjection
from h10_py.core.exactnum import four_squares
from h10_py.core.gadgets import (
    add_dummy,
    avoidance_equation,
    build_nonzero_equation,
    exclusion_product,
    nonzero_assignment,
    witness_nonzero,
)
from h10_py.core.parser import (
    parse_equation,
    parse_rational,
    parse_tuple,
    render_equation,
    render_tuple,
)
from h10_py.core.rings import FindMode, RingSpec, find_nonzero_integer, locate_nonzero_integer
from h10_py.engines.flowcharts import decide_solvability, semidecide_finite
from h10_py.engines.lists import resolve_list
from h10_py.engines.oracles import contains_via_oracle, load_oracle, membership_equation
from h10_py.engines.search import dovetail_search
from h10_py.engines.trace import TraceWriter
from h10_py.errors import CommandLineError, H10Error, InvalidParameter, ParseError
from h10_py.models import BudgetExhausted, EngineOutcome, Halted

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_EXHAUSTED = 2

app = typer.Typer(
    name="h10-py",
    help="Prime-coded enumerations, Diophantine gadgets and semi-decision engines over subrings of Q.",
    add_completion=False,
    pretty_exceptions_enable=False,
)

RING = typer.Option("Z", "--ring", help='Ring: "Z", "Q", "N", "Z[1/m]" or "c*Z".')
JSON = typer.Option(False, "--json", help="Emit a single JSON document.")
BUDGET = typer.Option(None, "--budget", help="Step budget (H10_DEFAULT_BUDGET when omitted).")
TRACE = typer.Option(None, "--trace", help="Write a tab-separated step trace to this path.")


@dataclass
class Report:
    text: str
    result: Any
    evidence: dict[str, Any] | None = None
    exit_code: int = EXIT_OK


def _error_document(subcommand: str, inputs: dict[str, Any], error: H10Error) -> dict[str, Any]:
    span = error.span if isinstance(error, ParseError) else None
    return {
        "subcommand": subcommand,
        "inputs": inputs,
        "error": {
            "code": error.error_code,
            "message": error.message,
            "span": None if span is None else [span.start, span.end],
        },
    }


def _respond(
    subcommand: str, inputs: dict[str, Any], as_json: bool, compute: Callable[[], Report]
) -> None:
    try:
        report = compute()
    except H10Error as e:
        logger.debug("%s failed", subcommand, exc_info=True)
        if as_json:
            typer.echo(json.dumps(_error_document(subcommand, inputs, e)))
        typer.echo(str(e), err=True)
        raise typer.Exit(EXIT_ERROR) from e
    if as_json:
        document = {
            "subcommand": subcommand,
            "inputs": inputs,
            "result": report.result,
            "evidence": report.evidence,
        }
        typer.echo(json.dumps(document))
    else:
        typer.echo(report.text)
    if report.exit_code != EXIT_OK:
        raise typer.Exit(report.exit_code)


def _outcome_report(outcome: EngineOutcome) -> Report:
    if isinstance(outcome, BudgetExhausted):
        return Report(
            str(outcome),
            {"outcome": "exhausted", "steps": outcome.steps, "last_index": outcome.last_index},
            exit_code=EXIT_EXHAUSTED,
        )
    assert isinstance(outcome, Halted)
    return Report(
        str(outcome),
        {"outcome": "halted", "verdict": outcome.verdict.value},
        evidence=outcome.evidence.to_dict(),
    )


def _trace_context(path: Optional[str]):
    return TraceWriter.open(path) if path else nullcontext()


@app.command("parse")
def parse_command(equation: str, as_json: bool = JSON) -> None:
    """Parse an equation and print its canonical form."""

    def compute() -> Report:
        rendered = render_equation(parse_equation(equation))
        return Report(rendered, rendered)

    _respond("parse", {"equation": equation}, as_json, compute)


@app.command("eval")
def eval_command(equation: str, point: str, as_json: bool = JSON) -> None:
    """Evaluate the left-hand side of an equation at a tuple."""

    def compute() -> Report:
        value = parse_equation(equation).evaluate(parse_tuple(point))
        return Report(str(value), {"value": str(value), "solution": not value})

    _respond("eval", {"equation": equation, "point": point}, as_json, compute)


@app.command("encode")
def encode_command(
    point: str,
    ring: Optional[str] = typer.Option(None, "--ring", help="Index through this ring's surjection."),
    as_json: bool = JSON,
) -> None:
    """Print an index that decodes to the tuple."""

    def compute() -> Report:
        t = parse_tuple(point)
        index = encode_tuple(t) if ring is None else preimage(RingSpec.parse(ring), t)
        return Report(str(index), index)

    _respond("encode", {"point": point, "ring": ring}, as_json, compute)


@app.command("decode")
def decode_command(
    x: int, n: int = typer.Option(1, "--n", help="Tuple length."), as_json: bool = JSON
) -> None:
    """Decode an index into a rational tuple."""

    def compute() -> Report:
        rendered = render_tuple(decode_tuple(x, n))
        return Report(rendered, rendered)

    _respond("decode", {"x": x, "n": n}, as_json, compute)


@app.command("ring-contains")
def ring_contains_command(
    value: str,
    ring: str = RING,
    oracle: Optional[str] = typer.Option(
        None, "--oracle", help="Decide through an oracle instead of the ring model."
    ),
    as_json: bool = JSON,
) -> None:
    """Decide membership of a rational in a ring."""

    def compute() -> Report:
        spec = RingSpec.parse(ring)
        r = parse_rational(value)
        if oracle is None:
            member = spec.contains(r)
        else:
            answerer = load_oracle(oracle, membership_equation(r.hat, r.bar), spec)
            member = contains_via_oracle(answerer, spec, r.hat, r.bar)
        return Report(str(member).lower(), member)

    _respond("ring-contains", {"value": value, "ring": ring, "oracle": oracle}, as_json, compute)


@app.command("ring-find-m")
def ring_find_m_command(
    ring: str = RING,
    constructive: bool = typer.Option(
        False, "--constructive", help="Search the enumeration instead of reading the ring."
    ),
    n: int = typer.Option(1, "--n", help="Arity of the searched enumeration."),
    as_json: bool = JSON,
) -> None:
    """Find a non-zero integer in the ring."""

    def compute() -> Report:
        spec = RingSpec.parse(ring)
        if constructive:
            m, index = locate_nonzero_integer(spec, n)
            return Report(f"{m} i={index}", {"m": m}, evidence={"index": index})
        m = find_nonzero_integer(spec, FindMode.DIRECT)
        return Report(str(m), {"m": m})

    inputs = {"ring": ring, "constructive": constructive, "n": n}
    _respond("ring-find-m", inputs, as_json, compute)


@app.command("ring-enumerate")
def ring_enumerate_command(
    k: int,
    ring: str = RING,
    n: int = typer.Option(1, "--n", help="Tuple length."),
    as_json: bool = JSON,
) -> None:
    """Print the k-th tuple of the ring's surjection N -> R^n."""

    def compute() -> Report:
        if k < 0:
            raise InvalidParameter(f"enumeration indices are non-negative, got {k}")
        rendered = render_tuple(surjection(RingSpec.parse(ring), n, k))
        return Report(rendered, rendered)

    _respond("ring-enumerate", {"k": k, "ring": ring, "n": n}, as_json, compute)


@app.command("four-squares")
def four_squares_command(n: int, as_json: bool = JSON) -> None:
    """Write n as t1^2 + t2^2 + t3^2 + t4^2 with t1 >= t2 >= t3 >= t4."""

    def compute() -> Report:
        witness = four_squares(n)
        return Report(render_tuple(QTuple.of(*witness)), list(witness))

    _respond("four-squares", {"n": n}, as_json, compute)


@app.command("gadget-dummy")
def gadget_dummy_command(equation: str, as_json: bool = JSON) -> None:
    """Append a variable with zero coefficient."""

    def compute() -> Report:
        rendered = render_equation(add_dummy(parse_equation(equation)))
        return Report(rendered, rendered)

    _respond("gadget-dummy", {"equation": equation}, as_json, compute)


@app.command("gadget-nonzero")
def gadget_nonzero_command(
    b: str,
    ring: str = RING,
    m: Optional[int] = typer.Option(None, "--m", help="Non-zero integer of the ring."),
    as_json: bool = JSON,
) -> None:
    """Build the non-zero gadget for m and solve it for b."""

    def compute() -> Report:
        spec = RingSpec.parse(ring)
        value = parse_rational(b)
        chosen = find_nonzero_integer(spec) if m is None else m
        equation = build_nonzero_equation(chosen)
        witness = witness_nonzero(value, chosen, spec)
        solution = None if witness is None else render_tuple(nonzero_assignment(value, witness))
        text = f"{render_equation(equation)}\n{solution or 'none'}"
        return Report(text, {"equation": render_equation(equation), "m": chosen, "solution": solution})

    _respond("gadget-nonzero", {"b": b, "ring": ring, "m": m}, as_json, compute)


@app.command("gadget-exclude")
def gadget_exclude_command(
    points: Optional[List[str]] = typer.Argument(None, help="Excluded tuples."),
    n: Optional[int] = typer.Option(None, "--n", help="Arity, needed when no point is given."),
    as_json: bool = JSON,
) -> None:
    """Print the polynomial vanishing exactly on the given points."""

    def compute() -> Report:
        parsed = [parse_tuple(point) for point in points or []]
        rendered = str(exclusion_product(parsed, n))
        return Report(rendered, rendered)

    _respond("gadget-exclude", {"points": points or [], "n": n}, as_json, compute)


@app.command("gadget-avoid")
def gadget_avoid_command(
    equation: str,
    points: Optional[List[str]] = typer.Argument(None, help="Excluded tuples."),
    m: int = typer.Option(1, "--m", help="Non-zero integer of the ring."),
    as_json: bool = JSON,
) -> None:
    """Flatten "solvable outside the points" into one equation."""

    def compute() -> Report:
        parsed = [parse_tuple(point) for point in points or []]
        rendered = render_equation(avoidance_equation(parse_equation(equation), parsed, m))
        return Report(rendered, rendered)

    inputs = {"equation": equation, "points": points or [], "m": m}
    _respond("gadget-avoid", inputs, as_json, compute)


@app.command("search")
def search_command(
    equation: str,
    ring: str = RING,
    budget: Optional[int] = BUDGET,
    trace: Optional[str] = TRACE,
    as_json: bool = JSON,
) -> None:
    """Look for a solution along the ring's enumeration."""

    def compute() -> Report:
        eq, spec = parse_equation(equation), RingSpec.parse(ring)
        with _trace_context(trace) as writer:
            return _outcome_report(dovetail_search(eq, spec, budget, writer))

    inputs = {"equation": equation, "ring": ring, "budget": budget}
    _respond("search", inputs, as_json, compute)


@app.command("semidecide-finite")
def semidecide_finite_command(
    equation: str,
    ring: str = RING,
    oracle: str = typer.Option(..., "--oracle", help="table:v1,..|table:inf|univariate-linear|bounded-search[:B]|FILE"),
    m: Optional[int] = typer.Option(None, "--m", help="Non-zero integer of the ring."),
    budget: Optional[int] = BUDGET,
    flatten: bool = typer.Option(False, "--flatten", help="Trace flattened avoidance equations."),
    trace: Optional[str] = TRACE,
    as_json: bool = JSON,
) -> None:
    """Halt exactly when the equation has finitely many solutions."""

    def compute() -> Report:
        eq, spec = parse_equation(equation), RingSpec.parse(ring)
        answerer = load_oracle(oracle, eq, spec)
        with _trace_context(trace) as writer:
            outcome = semidecide_finite(eq, spec, answerer, m, budget, writer, flatten)
        return _outcome_report(outcome)

    inputs = {"equation": equation, "ring": ring, "oracle": oracle, "m": m, "budget": budget}
    _respond("semidecide-finite", inputs, as_json, compute)


@app.command("decide")
def decide_command(
    equation: str,
    ring: str = typer.Option("Q", "--ring", help='Ring: "Z", "Q", "N", "Z[1/m]" or "c*Z".'),
    list_spec: str = typer.Option(
        "builtin:quadratic", "--list", help="builtin:quadratic or a list document."
    ),
    budget: Optional[int] = BUDGET,
    trace: Optional[str] = TRACE,
    as_json: bool = JSON,
) -> None:
    """Decide solvability against a list of finite-solution equations."""

    def compute() -> Report:
        eq, spec = parse_equation(equation), RingSpec.parse(ring)
        enumerator = resolve_list(list_spec)
        with _trace_context(trace) as writer:
            return _outcome_report(decide_solvability(eq, spec, enumerator, budget, writer))

    inputs = {"equation": equation, "ring": ring, "list": list_spec, "budget": budget}
    _respond("decide", inputs, as_json, compute)


def _usage_failure(args: List[str], failure: SystemExit) -> int:
    # usage errors exit with 2, which would read as an exhausted budget
    message = str(failure.__context__) if failure.__context__ is not None else ""
    logger.debug("usage error for %r: %s", args, message)
    if "--json" in args:
        subcommand = args[0] if args and not args[0].startswith("-") else ""
        error = CommandLineError(message or None)
        typer.echo(json.dumps(_error_document(subcommand, {"argv": args}, error)))
    return EXIT_ERROR


def run(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        level=DEFAULT_CONFIG.log_level.upper(),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    args = sys.argv[1:] if argv is None else list(argv)
    try:
        app(args=args, prog_name="h10-py", standalone_mode=True)
    except SystemExit as e:
        code = EXIT_OK if e.code is None else e.code
        if isinstance(e.__context__, typer.Exit):
            # clean finish, --help, or a code raised by _respond
            return code if isinstance(code, int) else EXIT_ERROR
        if code == EXIT_OK:
            return EXIT_OK
        return _usage_failure(args, e)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(run())
