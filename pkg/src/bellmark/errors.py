"""Exception types shared across the package."""


class BellmarkError(Exception):
    """Base class for errors raised by this package."""


class InvalidInputError(BellmarkError, ValueError):
    """Malformed or out-of-contract input (CLI exit code 1)."""


class NoViolationMarginError(BellmarkError):
    """The requested target lies at or below the classical threshold, so no
    sample-size plan exists (CLI exit code 2)."""


class DisconnectedGraphError(InvalidInputError):
    """An operation requiring a connected graph received a disconnected one."""
