"""Exception types shared across the package."""


class QuatringError(Exception):
    """Base class for all package errors."""


class NotAUnit(QuatringError, ArithmeticError):
    """Raised when an element that must be invertible is not.

    ``gcd`` carries the offending common factor with the modulus.
    """

    def __init__(self, value, n, gcd):
        self.value = value
        self.n = n
        self.gcd = gcd
        super().__init__(f"{value} is not a unit mod {n} (gcd={gcd})")


class NoSolution(QuatringError):
    """A congruence has no solution under the requested parameters."""


class NonSmoothPoint(QuatringError):
    """Both partial derivatives vanish mod p, so the point cannot be lifted."""


class BudgetExceeded(QuatringError):
    """An exhaustive enumeration would exceed the configured budget."""

    def __init__(self, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(f"enumeration needs {required} items, budget is {budget}")
