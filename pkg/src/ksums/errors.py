"""Exception hierarchy. The CLI maps these onto exit codes."""


class KsumsError(Exception):
    exit_code = 1


class InvalidInputError(KsumsError, ValueError):
    exit_code = 2


class SumOverflowError(InvalidInputError, OverflowError):
    exit_code = 2


class BudgetExceededError(KsumsError):
    """Raised before any work starts when a job would exceed its budget."""

    exit_code = 3

    def __init__(self, message, required=None, budget=None):
        super().__init__(message)
        self.required = required
        self.budget = budget


class InvariantViolation(KsumsError):
    exit_code = 4
