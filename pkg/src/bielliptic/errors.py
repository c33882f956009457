"""Exception types shared across the package."""


class InvalidInput(ValueError):
    """Raised when an argument violates an operation's precondition."""


class DegenerateInput(InvalidInput):
    """A singular curve, a degenerate pencil, or a repeated-root quartic."""


class NotAdmissible(InvalidInput):
    """The twisting element fails the norm condition a^{-1} N(eps) in Q*^2."""


class NonInvertibleElement(InvalidInput):
    """An algebra element with zero norm was used where a unit is required."""


class ResourceLimit(RuntimeError):
    """A bounded search exceeded its depth cap without reaching a decision."""

    def __init__(self, message, deepest=None):
        super().__init__(message)
        self.deepest = deepest


class TheoremViolation(AssertionError):
    """An identity that holds by theory failed; indicates an implementation bug."""
