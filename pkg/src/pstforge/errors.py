"""Exception types shared across the package."""


class PstForgeError(Exception):
    """Base class for all package-specific errors."""


class InvalidParam(PstForgeError):
    """A parameter is outside its documented domain."""


class EmptySpectrum(PstForgeError):
    """A spectrum with no positive levels cannot seed the recursion."""


class NonPositiveCoupling(PstForgeError):
    """The recursion produced a non-positive working variable.

    With exact inputs this means the level-ordering precondition was
    violated; with floats it usually means the spectrum is too close to
    degenerate for the construction to survive rounding.
    """


class OrderingBreakdown(PstForgeError):
    """A floating-point spectrum is too close to degenerate to re-solve."""


class ConvergenceFailure(PstForgeError):
    """The iterative eigensolver exhausted its budget."""


class DimensionMismatch(PstForgeError):
    """Operands describe chains of different sizes."""
