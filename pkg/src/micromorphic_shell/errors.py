"""Exception types raised across the package."""


class DomainError(ValueError):
    """Argument outside the domain of a function (negative radius, x <= 0 for K, ...)."""


class ValidationError(ValueError):
    """Material parameters violate positivity or homogenization constraints."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid material parameters: " + "; ".join(self.violations))


class HomogenizationError(ValidationError):
    """Reuss inversion impossible because a micro/macro modulus gap is not positive."""


class ConditioningError(ArithmeticError):
    """Coefficient system numerically singular."""

    def __init__(self, message, condition_number):
        self.condition_number = condition_number
        super().__init__(f"{message} (estimated condition number {condition_number:.3e})")


class NormalizationError(ValueError):
    """Requested normalization by a zero reference displacement."""


class OracleError(RuntimeError):
    """Finite-difference oracle could not produce a solution."""
