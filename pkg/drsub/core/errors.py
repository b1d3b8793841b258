"""Exception hierarchy shared by every drsub module."""


class DrSubError(Exception):
    """Base class for all library errors."""


class InvalidParameterError(DrSubError, ValueError):
    """A solver or instance parameter is outside its admissible range."""


class SingletonRangeError(InvalidParameterError):
    """The integer range (floor(alpha*k), k] holds no admissible step."""


class DomainError(DrSubError, ValueError):
    """A vector leaves the box 0 <= x <= B of its instance."""


class ReductionError(DrSubError, ValueError):
    """An item set composes a coordinate above its bound."""


class EnumerationGuardError(DrSubError):
    """Exhaustive enumeration requested above the configured guard."""


class IngestionError(DrSubError):
    """An edge-list file could not be read or parsed."""


class AuditError(DrSubError):
    """A reported objective disagrees with its re-evaluation."""


class OutputError(DrSubError):
    """A results file cannot be written."""
