"""Exception types.  The CLI maps each family to a fixed exit code."""


class UnipadeError(Exception):
    """Base class for all library errors."""

    exit_code = 3


class PreconditionError(UnipadeError, ValueError):
    """An operation was called outside its documented domain."""

    exit_code = 2


class ModeError(PreconditionError):
    """Exact and floating values were mixed, or the wrong mode was supplied."""


class NotInDError(PreconditionError):
    """The jet does not belong to D_{p,q}(zeta): the Hankel determinant vanishes."""


class PipelineError(UnipadeError):
    """A constructive pipeline could not produce a result (fit, ladder, index set)."""

    exit_code = 3

    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail or {}


class ParseError(UnipadeError, ValueError):
    """Malformed JSON input."""

    exit_code = 4
