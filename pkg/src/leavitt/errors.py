"""Exception hierarchy shared by the library and the command line."""


class LeavittError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 1


class GraphError(LeavittError, ValueError):
    """Malformed graph, path, or graph file."""

    exit_code = 2


class ParseError(LeavittError, ValueError):
    """Syntax error in an element, polynomial, or descriptor string."""

    exit_code = 2

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class SessionMismatch(LeavittError, ValueError):
    """Operands belong to different graphs or fields."""

    exit_code = 2


class RelationError(LeavittError):
    """A generator assignment violates the defining relations."""

    exit_code = 3

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class MathDomainError(LeavittError, ValueError):
    """Mathematical precondition failed (reducible modulus, bad cycle, ...)."""

    exit_code = 4
