"""Closed-form relaxed micromorphic elastostatics of long cylindrical shells."""

from .classical import ClassicalCoefficients, classical_displacement, classical_solve, deviation
from .errors import (
    ConditioningError,
    DomainError,
    HomogenizationError,
    NormalizationError,
    OracleError,
    ValidationError,
)
from .material import DimensionlessSet, MaterialParameters, ValidityReport, energy_density, from_dimensionless, validate
from .solver import (
    BoundaryData,
    CoefficientSet,
    DerivedCoefficients,
    FieldSample,
    RadialProfile,
    ShellGeometry,
    derived_coefficients,
    evaluate,
    profile,
    solve_coefficients,
)
from .verification import ResidualReport, energy_check, fd_solve, residual_check

__version__ = "0.1.0"
