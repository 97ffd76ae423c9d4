from typing import Optional, TYPE_CHECKING

if TYPE_CHECKING:
    from h10_py.core.parser import SourceSpan


class H10Error(Exception):
    """Base exception class for all h10-py errors."""

    error_code: str = "H10-000"

    def __init__(self, message: Optional[str] = None):
        self.message = message or self.__class__.__doc__
        super().__init__(self.message)

    def __str__(self):
        return f"{self.__class__.__name__} ({self.error_code}): {self.message}"


class CommandLineError(H10Error):
    """Command line does not match any subcommand signature."""

    error_code = "H10-001"


class InvalidDenominator(H10Error):
    """A rational number cannot have a zero denominator."""

    error_code = "H10-101"


class InvalidIndex(H10Error):
    """Index outside the domain of the requested enumeration."""

    error_code = "H10-102"


class ArityError(H10Error):
    """Variable index or tuple length does not fit the arity."""

    error_code = "H10-201"


class InvalidParameter(H10Error):
    """A parameter violates the precondition of the operation."""

    error_code = "H10-202"


class NotASubring(H10Error):
    """The operation needs a non-zero subring of Q; N only admits the tau-presentation machinery."""

    error_code = "H10-203"


class ParseError(H10Error):
    """Input text could not be parsed."""

    error_code = "H10-300"

    def __init__(self, message: Optional[str] = None, span: Optional["SourceSpan"] = None):
        super().__init__(message)
        self.span = span

    def __str__(self):
        where = f" at {self.span.start}..{self.span.end}" if self.span is not None else ""
        return f"{self.__class__.__name__} ({self.error_code}){where}: {self.message}"


class LexicalError(ParseError):
    """Unexpected character in input."""

    error_code = "H10-301"


class EquationSyntaxError(ParseError):
    """Input does not match the equation grammar."""

    error_code = "H10-302"


class ExponentError(ParseError):
    """Exponents must be non-negative integer literals."""

    error_code = "H10-303"


class ForcedArityError(ParseError):
    """Forced arity is below the largest variable index used."""

    error_code = "H10-304"


class OracleError(H10Error):
    """The oracle could not answer the query."""

    error_code = "H10-400"


class OracleValidationError(OracleError):
    """Oracle table lists a tuple that is not a solution in the ring."""

    error_code = "H10-401"


class UnsupportedQuery(OracleError):
    """Query lies outside the fragment the oracle decides."""

    error_code = "H10-402"


class ListValidationError(H10Error):
    """Finite-solution list failed validation."""

    error_code = "H10-501"
