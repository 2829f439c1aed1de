"""
errors.py - Exception hierarchy

Failures that are data (unsound relations, exhausted completion runs,
failing verdicts) are returned in result objects and never raised.
"""


class OrdmonError(Exception):
    """Base class for all library errors"""


class ValidationError(OrdmonError, ValueError):
    """Malformed input or violated precondition"""


class WordSyntaxError(ValidationError):
    """Word text does not match the token grammar"""


class UnsupportedFamilyError(OrdmonError, ValueError):
    """Operation is not defined for the requested family"""


class ResourceLimitError(OrdmonError, RuntimeError):
    """A configured enumeration or closure cap was exceeded"""


class TerminationGuardError(OrdmonError, RuntimeError):
    """A rewriting procedure hit its step cap or search bound"""
