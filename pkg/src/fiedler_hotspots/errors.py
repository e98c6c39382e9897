"""Exception types raised across the package."""


class FiedlerError(Exception):
    """Base class for all package errors."""


class DimensionError(FiedlerError, ValueError):
    pass


class ParameterError(FiedlerError, ValueError):
    pass


class PreconditionError(FiedlerError, ValueError):
    pass


class OrientationError(PreconditionError):
    pass


class CapacityError(FiedlerError, ValueError):
    pass


class ValidationError(FiedlerError, ValueError):
    pass


class EmptySubsetError(FiedlerError, ValueError):
    pass


class ConvergenceError(FiedlerError, RuntimeError):
    """Iterative solver gave up; ``best_residual`` is the smallest residual seen."""

    def __init__(self, message, best_residual=float("inf"), iterations=0):
        super().__init__(message)
        self.best_residual = best_residual
        self.iterations = iterations


class ParseError(FiedlerError, ValueError):
    def __init__(self, message, lineno=None, path=None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if lineno is not None:
            where += f"{lineno}: "
        elif where:
            where += " "
        super().__init__(where + message)
        self.lineno = lineno
        self.path = path


class TrialFailureError(FiedlerError, RuntimeError):
    """Too many Monte-Carlo trials failed; ``summary`` holds what was gathered."""

    def __init__(self, message, summary=None):
        super().__init__(message)
        self.summary = summary
