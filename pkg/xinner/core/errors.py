"""
Exception hierarchy for the xinner kernel
"""

from typing import Any, Optional


class XInnerError(Exception):
    """Base class for every error raised by xinner."""


class InputError(XInnerError):
    """Malformed input: bad syntax, unknown names, bad arguments or config."""


class MathematicalRejection(XInnerError):
    """A well-formed request whose mathematical answer is negative."""


class KernelError(XInnerError):
    """The kernel could not finish or caught itself disagreeing."""


class ParseError(InputError):
    """
    Syntax error in a presentation or expression.

    Args:
        message (str): What went wrong
        line (int): 1-based line of the offending token
        column (int): 1-based column of the offending token
    """

    def __init__(self, message: str, line: int = 1, column: int = 1) -> None:
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


class DuplicateGenerator(ParseError):
    pass


class UnknownSymbol(ParseError):
    pass


class InvalidPresentation(InputError):
    """Presentation is syntactically fine but cannot be compiled."""


class InvalidArgument(InputError, ValueError):
    pass


class ConfigError(InputError):
    pass


class DivisionByZero(MathematicalRejection, ZeroDivisionError):
    pass


class ZeroElement(MathematicalRejection, ValueError):
    """Operation requires a nonzero element."""


class NotScalarClosed(MathematicalRejection):
    """Monomial products leave the span of monomials (lower-order terms)."""


class NegativePowerOfNonInvertible(MathematicalRejection):
    pass


class NotInvertible(MathematicalRejection):
    """A variable cannot be inverted in the rewrite system."""


class WrongKind(MathematicalRejection):
    """Presentation kind does not support the requested operation."""


class NotMonotone(MathematicalRejection):
    pass


class NotHomogeneous(MathematicalRejection):
    pass


class NotAnAutomorphism(MathematicalRejection):
    """Generator images do not respect the defining relations."""


class NotADerivation(MathematicalRejection):
    """Skew derivation images violate the Leibniz rule on a relation."""


class NotTriangular(MathematicalRejection):
    pass


class NotInvertibleShape(MathematicalRejection):
    pass


class BoxTooLarge(MathematicalRejection):
    pass


class IdentityFails(MathematicalRejection):
    pass


class UnverifiedWitness(MathematicalRejection):
    pass


class NotStabilizing(MathematicalRejection):
    """
    Conjugation leaves the ring.

    Args:
        message (str): Description of the failure
        generator (str, optional): Generator whose image left the ring
        image (Any, optional): The offending image
    """

    def __init__(
        self, message: str, generator: Optional[str] = None, image: Any = None
    ) -> None:
        super().__init__(message)
        self.generator = generator
        self.image = image


class Rejection(MathematicalRejection):
    """
    A candidate inducing element failed its closure conditions.

    The failing report is attached so callers can show every check.
    """

    def __init__(self, message: str, report: Any = None) -> None:
        super().__init__(message)
        self.report = report


class StepBudgetExceeded(KernelError):
    pass


class InternalDisagreement(KernelError):
    """Two independent computations of the same quantity differ."""


EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_USAGE = 2


def exit_code_for(error: BaseException) -> int:
    """
    Map an exception to the CLI exit code convention.

    Args:
        error (BaseException): Raised exception

    Returns:
        int: 2 for input errors, 1 for everything else
    """
    if isinstance(error, InputError):
        return EXIT_USAGE
    return EXIT_REJECTED
