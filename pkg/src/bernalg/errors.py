"""Exception hierarchy shared by every module of the package."""


class BernsteinError(Exception):
    """Base class for all errors raised by :mod:`bernalg`."""


class ZeroInverse(BernsteinError, ZeroDivisionError):
    pass


class FieldMismatch(BernsteinError, TypeError):
    pass


class CharTwo(BernsteinError, ValueError):
    """Characteristic 2 is not supported: the scalar 1/2 must exist."""


class DimensionMismatch(BernsteinError, ValueError):
    pass


class Not4Algebra(BernsteinError, ValueError):
    pass


class NotOperator(BernsteinError, ValueError):
    pass


class NotBernstein(BernsteinError, ValueError):
    pass


class NotIdempotent(BernsteinError, ValueError):
    pass


class UnsupportedField(BernsteinError, ValueError):
    pass


class UnknownName(BernsteinError, KeyError):
    pass


class InputError(BernsteinError, ValueError):
    """Malformed or inconsistent JSON input."""


class BudgetExceeded(BernsteinError, RuntimeError):
    """An exhaustive search would explore more candidates than allowed."""

    def __init__(self, explored, budget):
        super().__init__(f"search budget exceeded: {explored} candidates > budget {budget}")
        self.explored = explored
        self.budget = budget
