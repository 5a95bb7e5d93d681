"""Exception hierarchy shared by all solver modules."""


class MapError(Exception):
    """Base class for every error raised by this package."""


class InstanceMismatchError(MapError):
    """Assignment and tensor disagree on dimensionality or cardinality."""


class InstanceTooLargeError(MapError):
    pass


class ParseError(MapError):
    """Malformed instance or solution file.

    ``line`` and ``column`` are 1-based; ``column`` counts whitespace
    separated tokens on that line.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ValidationError(MapError):
    """A value violates an invariant (e.g. a row is not a permutation)."""


class EmptyMatrixError(MapError):
    pass


class DimensionError(MapError):
    pass


class TooLargeForExactError(MapError):
    pass


class UndefinedBoundError(MapError):
    def __init__(self, level: int):
        self.level = level
        super().__init__(f"no escape observed from level {level} (self-transition probability is 1)")


class InsufficientSampleError(MapError):
    pass


class DomainError(MapError):
    def __init__(self, message: str, offending: list[int]):
        self.offending = offending
        super().__init__(f"{message}: instances {offending}")


class DedupError(MapError):
    pass
