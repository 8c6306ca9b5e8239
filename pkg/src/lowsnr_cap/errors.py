"""Exception types raised by the library."""


class DomainError(ValueError):
    """An argument lies outside the domain where a formula is defined."""


class ConstraintError(ValueError):
    """An input distribution would violate the average power constraint."""


class SnrRangeError(ValueError):
    """The SNR is outside the range in which the low-SNR results are validated."""


class ConvergenceError(ArithmeticError):
    """An iterative scheme (quadrature, root bracketing, Halley) did not converge."""
