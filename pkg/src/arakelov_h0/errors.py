"""Exception hierarchy.

Every error carries the CLI exit code it maps to, so ``cli.dispatch`` can
translate without a lookup table.
"""


class ArakelovError(Exception):
    exit_code = 1


class ParameterError(ArakelovError, ValueError):
    """Bad argument value (delta out of range, malformed JSON, ...)."""

    exit_code = 2


class PrecisionError(ArakelovError, ArithmeticError):
    """Working precision too low for the requested computation."""

    exit_code = 3


class DomainError(ArakelovError, ValueError):
    """Input outside the mathematical domain of an operation."""

    exit_code = 4


class ReducibleError(DomainError):
    pass


class RankError(DomainError):
    pass


class ZeroElementError(DomainError, ZeroDivisionError):
    pass


class MagnitudeError(DomainError):
    """Log-coordinates too skewed to materialise at the working precision."""


class InvariantError(ArakelovError, AssertionError):
    """A proven bound failed to hold; indicates a bug or lost precision."""

    exit_code = 3
