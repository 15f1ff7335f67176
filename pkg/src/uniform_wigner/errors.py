"""Exception types raised by the library.

Domain errors derive from :class:`DomainError` (a ``ValueError``) so that the
command-line driver can map all of them to a single exit status.
"""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class NegativeJ(DomainError):
    pass


class MOutOfRange(DomainError):
    pass


class ParityMismatch(DomainError):
    pass


class AngleOutOfRange(DomainError):
    pass


class NegativeArgument(DomainError):
    pass


class ArgumentOutOfRange(DomainError):
    pass


class PrecisionExhausted(ArithmeticError):
    """Series cancellation ate more digits than the working precision allows."""


class QuadratureNotConverged(ArithmeticError):
    """Adaptive quadrature ran out of panels before meeting its tolerance."""


class DivisionByNearZero(ArithmeticError):
    pass
