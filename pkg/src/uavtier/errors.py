"""Exceptions shared across the package."""


class NumericFailure(RuntimeError):
    """A computation produced non-finite or numerically unusable values."""


class SearchBudgetExceeded(ValueError):
    """An enumeration request is larger than the supported budget."""
