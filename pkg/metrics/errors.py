"""
Exception hierarchy for the toolkit.

Every error raised on purpose derives from SkewError so the CLI can tell data
and IO problems apart from programming errors.
"""


class SkewError(Exception):
    """Root of every toolkit error."""


class ConfigError(SkewError):
    pass


class InvalidParameter(SkewError, ValueError):
    pass


class EmptyInput(SkewError, ValueError):
    def __init__(self, message="distribution needs at least one value"):
        super().__init__(message)


class NegativeValue(SkewError, ValueError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"negative value at index {index}")


class NonFiniteValue(SkewError, ValueError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"non-finite value at index {index}")


class DegenerateTotal(SkewError, ArithmeticError):
    """The distribution sums to zero, so no share-based metric is defined."""

    def __init__(self, metric=None):
        self.metric = metric
        where = f" for {metric}" if metric else ""
        super().__init__(f"distribution total is zero{where}")
