"""Classical plane-strain Lame annulus under prescribed radial displacements.

With Dirichlet data on both radii the displacement u = alpha r + beta/r is
fixed by geometry and boundary values alone; the elastic moduli drop out.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NormalizationError


@dataclass(frozen=True)
class ClassicalCoefficients:
    alpha: float
    beta_coef: float


def classical_solve(geom, bc) -> ClassicalCoefficients:
    ri, ro = geom.r_i, geom.r_o
    den = ro**2 - ri**2
    if den == 0:
        raise DomainError("degenerate geometry: r_i == r_o")
    alpha = (bc.U_o * ro - bc.U_i * ri) / den
    beta_coef = ri * ro * (bc.U_i * ro - bc.U_o * ri) / den
    return ClassicalCoefficients(alpha, beta_coef)


def classical_displacement(cc: ClassicalCoefficients, r):
    r = np.asarray(r, dtype=float)
    u = cc.alpha * r + cc.beta_coef / r
    return float(u) if u.ndim == 0 else u


def deviation_values(u_micro, u_classical, U_o: float):
    if U_o == 0:
        raise NormalizationError("deviation is normalized by U_o, which is zero; normalize by U_i instead")
    return (np.asarray(u_micro) - np.asarray(u_classical)) / U_o


def deviation(micro_profile, classical: ClassicalCoefficients, U_o: float) -> np.ndarray:
    """delta(r) = (u_micro - u_classical) / U_o on the profile grid."""
    return deviation_values(micro_profile.u_r, classical_displacement(classical, micro_profile.r), U_o)
