"""Exception types shared across the package."""


class SpexlabError(Exception):
    """Base class for all package errors."""


class ParameterError(SpexlabError, ValueError):
    """A constructor or operation parameter violates its stated bounds."""


class Graph6ParseError(SpexlabError, ValueError):
    """Malformed graph6 text; ``offset`` is the byte position of the defect."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class Graph6RangeError(SpexlabError, ValueError):
    """Vertex count outside the supported short-form graph6 range."""


class ConvergenceError(SpexlabError, RuntimeError):
    """Power iteration exhausted its budget; ``best`` holds the last estimate."""

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class EmbeddingCaseError(SpexlabError, RuntimeError):
    """A constructive embedding case analysis reached a state it proves impossible."""


class UsageError(SpexlabError):
    """Command line arguments do not form a valid plan."""
