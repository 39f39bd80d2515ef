from __future__ import annotations


class BitraceError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(BitraceError):
    pass


class InputError(BitraceError):
    """Malformed or inconsistent input data."""

    def __init__(self, message: str, *, source: str | None = None, line: int | None = None):
        self.source = source
        self.line = line
        where = ""
        if source is not None:
            where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


class InvariantError(BitraceError):
    """An internal consistency check failed."""
