"""Exception types shared across the library."""


class ConfigurationError(ValueError):
    """A parameter or option is outside its valid range or missing."""


class ArgumentError(ValueError):
    """A call argument (round index, dimension) is out of range."""


class DataError(ValueError):
    """Feedback data is inconsistent (duplicate origins, impossible arrivals)."""


class NumericError(ArithmeticError):
    """A numeric routine failed to reach its guaranteed accuracy."""


class ParseError(ValueError):
    """A text input does not follow its documented grammar."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SequencingError(RuntimeError):
    """An operation was invoked out of protocol order."""
