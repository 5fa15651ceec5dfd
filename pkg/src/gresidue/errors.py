"""Exception hierarchy shared by all modules."""


class GResidueError(Exception):
    """Base class for every error raised by the package."""


class ShapeError(GResidueError, ValueError):
    """Matrix or vector dimensions do not fit the operation."""


class SingularMatrixError(GResidueError, ArithmeticError):
    """A linear system has no unique solution."""


class NotSymmetricError(GResidueError, ValueError):
    pass


class ParseError(GResidueError, ValueError):
    """Syntax error in a polynomial expression or a system file.

    ``position`` is a 0-based character offset into ``text``; ``line`` is
    1-based and only set when parsing files.
    """

    def __init__(self, message, text="", position=None, line=None):
        self.reason = message
        self.text = text
        self.position = position
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"column {position + 1}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class ContextError(GResidueError, ValueError):
    """Polynomials living over different variable lists were combined."""


class LaurentError(GResidueError, ValueError):
    """An operation that needs a true polynomial received a Laurent one."""


class BasisError(GResidueError):
    """The system does not satisfy the pure-power leading-term hypothesis."""


class InfeasibleError(GResidueError):
    """A linear feasibility problem has no solution."""


class ConeError(GResidueError):
    pass


class ZeroDimensionalityError(GResidueError):
    """Buchberger completion hit its iteration cap."""


class InvariantError(GResidueError, AssertionError):
    """An internal cross-check failed; indicates a bug, not bad input."""
