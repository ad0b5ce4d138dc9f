"""Exception hierarchy shared by the solvers and the command-line front end."""


class TransheatError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(TransheatError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class SolverFailure(TransheatError):
    """A numerical procedure could not produce a trustworthy result."""


class NonvanishingViolation(SolverFailure):
    """The particular solution (or a divisor built from it) vanishes on the grid."""


class NoConvergence(SolverFailure):
    """An iterated series did not reach its tolerance within the term budget."""


class ConvergenceFailure(SolverFailure):
    """The singular value decomposition did not converge."""


class SingularSystemError(SolverFailure):
    """A tridiagonal elimination hit a pivot below the magnitude guard."""


class CompatibilityError(TransheatError, ValueError):
    """Initial and boundary data disagree at the corners of the rectangle."""


class ParseError(TransheatError, ValueError):
    """Malformed expression or problem file.

    ``offset`` is the byte offset into the source text and ``expected`` the
    set of tokens that would have been accepted there.
    """

    def __init__(self, message, offset=None, expected=()):
        self.message = message
        self.offset = offset
        self.expected = frozenset(expected)
        detail = message
        if offset is not None:
            detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)
