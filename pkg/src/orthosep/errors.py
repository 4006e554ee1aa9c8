"""Exception types shared across the package."""


class NotAPrimePower(ValueError):
    pass


class FieldTooLarge(ValueError):
    pass


class MixedFields(ValueError):
    pass


class MixedArity(ValueError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


class DimensionMismatch(ValueError):
    pass


class BadDescriptor(ValueError):
    pass


class ArityShrink(ValueError):
    pass


class NotInSAlpha(ValueError):
    pass


class ZeroAlpha(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class NotFoundWithinBudget(RuntimeError):
    pass


class NotSeparating(ValueError):
    pass


class PoolTooLarge(ValueError):
    pass


class NotFound(LookupError):
    pass


class NonInvariantMember(ValueError):
    """A member polynomial of an invariant set is moved by some group element."""

    def __init__(self, g, f, label=None):
        self.g = g
        self.f = f
        self.label = label
        super().__init__(f"{label or f} is not fixed by {g}")
