"""Exception types shared across the package."""


class LifeError(Exception):
    """Base class for all lifebench errors."""


class ConfigError(LifeError, ValueError):
    """A grid, partition or benchmark configuration is not legal."""


class DimensionTooSmall(ConfigError):
    pass


class TooManyParts(ConfigError):
    pass


class OutOfBounds(ConfigError):
    pass


class NonPositiveTime(ConfigError):
    pass


class ParseError(LifeError, ValueError):
    """Malformed pattern input, with the 1-based position of the fault."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)
