from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class BudgetExhausted(RuntimeError):
    """The cell budget ran out before the requested tolerance was met.

    ``partial`` holds the best result reached within the budget.
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class IllConditionedFit(ValueError):
    """A block maximum vanished or sank below its error bound."""
