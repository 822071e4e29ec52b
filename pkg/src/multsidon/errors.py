"""Exception types raised across the package."""


class InvalidArgument(ValueError):
    pass


class OutOfRange(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass
