"""Exception hierarchy shared by all braidlab modules."""


class BraidlabError(Exception):
    """Base class for every error raised by braidlab."""


class DomainError(BraidlabError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConstraintViolation(BraidlabError, ValueError):
    """A parameter set does not match the independent index set for its N."""


class UnsupportedOperation(BraidlabError):
    """The operation is not defined for the given input class."""


class ResourceError(BraidlabError, MemoryError):
    """A requested operator exceeds the configured dimension budget."""


class SingularityError(BraidlabError, ValueError):
    """A resolvent was requested too close to a singular point."""

    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = offending


class NumericalError(BraidlabError, ArithmeticError):
    """A numerical step (inversion, factorization) failed."""
