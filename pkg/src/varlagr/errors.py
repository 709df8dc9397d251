"""Exception types shared across the package."""


class VarlagrError(Exception):
    """Base class for all package errors."""


class ExprSyntaxError(VarlagrError):
    """Raised when expression text does not conform to the grammar."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnboundNameError(VarlagrError):
    """Raised when an expression references a name with no bound value."""

    def __init__(self, name, offset):
        super().__init__(f"unbound name {name!r} (at offset {offset})")
        self.name = name
        self.offset = offset


class DomainError(VarlagrError):
    """Evaluation left the natural domain (division by zero, ln of a
    non-positive number, sqrt of a negative number, singular coefficient)."""


class AccuracyError(VarlagrError):
    """A series or quadrature cannot reach its accuracy target."""


class GuardViolation(VarlagrError):
    """A sample point fell inside a singular-point or zero guard."""


class SingularEvaluation(GuardViolation):
    """A reciprocal-form Lagrangian was evaluated too close to a zero of
    its denominator."""


class NotTotalDerivative(VarlagrError):
    """The candidate gauge function does not reproduce the Lagrangian as a
    total derivative."""


class DeterminantZeroError(VarlagrError):
    """The two superpositions are proportional."""
