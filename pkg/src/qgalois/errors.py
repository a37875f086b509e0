"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class DegenerateInputError(ValueError):
    """The requested quantity is undefined because the distribution is degenerate."""


class PreconditionError(ValueError):
    """Input data violates a stated precondition (e.g. tied y-values)."""


class BudgetExceededError(RuntimeError):
    """An exhaustive enumeration would exceed its configured budget."""

    def __init__(self, size, budget):
        self.size = size
        self.budget = budget
        super().__init__(
            f"enumeration of {size} objects exceeds the budget of {budget}"
        )
