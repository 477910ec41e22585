"""Exception hierarchy shared by all riskfuzz modules."""


class RiskFuzzError(Exception):
    """Base class for every error raised by riskfuzz."""


class DomainError(RiskFuzzError, ValueError):
    """An input lies outside the domain an operation is defined on."""


class ValidationError(RiskFuzzError, ValueError):
    """A document or value object violates its schema or invariants."""


class DegenerateInputError(RiskFuzzError, ValueError):
    """A decision matrix cannot be normalized (e.g. a zero-norm column)."""

    def __init__(self, message, criterion=None):
        super().__init__(message)
        self.criterion = criterion


class InferenceError(RiskFuzzError, RuntimeError):
    """Fuzzy inference produced no usable output."""
