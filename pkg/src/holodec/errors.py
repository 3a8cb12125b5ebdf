"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """An enumeration hit its configured resource budget."""

    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} exceeded the budget of {cap}")
        self.what = what
        self.cap = cap


class InvariantViolation(RuntimeError):
    """A structural invariant failed; indicates a bug or corrupted data."""


class DecodeError(ValueError):
    """A coordinate vector is not the encoding of any positioned chain."""

    def __init__(self, level: int, reason: str):
        super().__init__(f"cannot decode at level {level}: {reason}")
        self.level = level
        self.reason = reason
