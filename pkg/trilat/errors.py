"""
Exception hierarchy. Every error carries the exit code the runner maps it to.
"""


class TrilatError(Exception):
    exit_code = 1

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    def __reduce__(self):
        return _restore, (type(self), str(self), self.__dict__)


class InputError(TrilatError):
    """Unreadable or missing input."""
    exit_code = 1


class ValidationError(TrilatError):
    exit_code = 2


class ParseError(ValidationError):
    """Malformed line in a triangulation file."""

    def __init__(self, message, line=None, **details):
        super().__init__(message, line=line, **details)
        self.line = line


class TopologyError(ValidationError):
    """The gluing is not a triangulated sphere."""

    def __init__(self, message, vertex=None, face=None, **details):
        super().__init__(message, vertex=vertex, face=face, **details)
        self.vertex = vertex
        self.face = face


class CurvatureError(ValidationError):
    """A vertex has degree larger than 6."""

    def __init__(self, message, vertex=None, degree=None, **details):
        super().__init__(message, vertex=vertex, degree=degree, **details)
        self.vertex = vertex
        self.degree = degree


class InvariantBreach(TrilatError):
    """A structural identity failed; `record` says which stage and check."""
    exit_code = 3

    def __init__(self, stage, check, **data):
        super().__init__("%s: %s failed" % (stage, check))
        self.record = dict(stage=stage, check=check, **data)


def _restore(cls, message, state):
    err = Exception.__new__(cls)
    Exception.__init__(err, message)
    err.__dict__.update(state)
    return err


def ensure(cond, stage, check, **data):
    if not cond:
        raise InvariantBreach(stage, check, **data)


class DegenerateError(ValidationError):
    """The triangulation has fewer than three singular vertices."""
