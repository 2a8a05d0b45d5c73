class TeleauditError(Exception):
    """Base class for every error raised by teleaudit"""


class InvalidInputError(TeleauditError, ValueError):
    """Input violates a documented precondition or invariant"""


class ConsistencyError(TeleauditError, RuntimeError):
    """An internal check that must always hold has failed (convention bug)"""
