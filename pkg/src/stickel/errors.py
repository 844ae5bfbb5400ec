"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An operation was called outside its domain."""


class ConductorError(PreconditionError):
    """The (f, H) pair does not describe a field of exact conductor f."""

    def __init__(self, f, true_conductor):
        self.f = f
        self.true_conductor = true_conductor
        super().__init__(
            f"conductor {f} is not exact for this subgroup; "
            f"the field has conductor {true_conductor}"
        )


class SemisimplicityError(PreconditionError):
    """ell divides the order of Delta."""


class IntegralityError(ArithmeticError):
    """A value that must be integral came out with a denominator.

    This never happens for correct inputs; it flags an arithmetic bug.
    """


class PrecisionError(ArithmeticError):
    """Not enough ell-adic (or T-adic) precision to produce a faithful answer."""
