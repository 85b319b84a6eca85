"""Exception types shared by every module.

The CLI maps these onto exit codes, so each family of failure has its own class.
"""


class LocalityError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(LocalityError, ValueError):
    """Malformed word, graph or certificate text."""


class PreconditionError(LocalityError, ValueError):
    """An input violates an operation's precondition."""


class InvalidCertificateError(LocalityError, ValueError):
    """A marking sequence, arrangement or decomposition does not fit its instance."""


class ResourceLimitError(LocalityError):
    """The instance exceeds an exact solver's size cap."""


class ContractViolation(LocalityError, AssertionError):
    """A translation missed a bound that should hold by construction. Indicates a bug."""
