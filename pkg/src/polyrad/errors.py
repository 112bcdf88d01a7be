"""Shared exception types."""


class FieldMismatchError(ValueError):
    """Operands belong to different fields."""


class ParseError(ValueError):
    """Input text does not conform to the expected grammar."""

    def __init__(self, message, position=None):
        if position is not None:
            message = "%s (at position %d)" % (message, position)
        super().__init__(message)
        self.position = position


class UndecidableError(RuntimeError):
    """The question cannot be decided within the configured caps."""


class PreconditionError(ValueError):
    """A stated hypothesis of the requested operation does not hold."""

    def __init__(self, hypothesis, detail=None):
        message = "hypothesis violated: %s" % hypothesis
        if detail is not None:
            message += " (%s)" % (detail,)
        super().__init__(message)
        self.hypothesis = hypothesis
        self.detail = detail


class LinearityError(RuntimeError):
    """A map that the theory predicts to be linear failed verification."""


class InconsistencyError(RuntimeError):
    """An internal cross-check failed, signalling bad upstream data."""
