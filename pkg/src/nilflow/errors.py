"""Exception types shared across the package."""


class NilflowError(Exception):
    """Base class for all nilflow errors."""


class InvalidParameterError(NilflowError, ValueError):
    """An argument is outside the accepted domain (bad dimension, n = 0, ...)."""


class DegenerateMetricError(NilflowError):
    """A metric is singular or has a nonpositive component."""


class NotApplicableError(NilflowError):
    """The requested formula's hypotheses are not satisfied by the input."""


class OutOfDomainError(NilflowError):
    """A closed-form expression was evaluated outside its domain (1 + bt <= 0)."""


class SingularExponentError(NilflowError):
    """A conserved-quantity exponent is singular at this coupling value."""
