"""Exception hierarchy shared by every cldp module."""


class CldpError(ValueError):
    """Base class for all errors raised by this package."""


class ConfigError(CldpError):
    """A mechanism configuration violates one of its invariants."""


class DomainError(CldpError):
    """A numeric argument lies outside the domain of the operation."""


class IndexOutOfRange(CldpError, IndexError):
    """A user index is not in ``1..num_users``."""


class LengthMismatch(CldpError):
    pass


class ShapeMismatch(CldpError):
    pass


class UserCountMismatch(CldpError):
    pass


class EmptyInput(CldpError):
    pass


class MissingColumn(CldpError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class ParseError(CldpError):
    """A data file line could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
