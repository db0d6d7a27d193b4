"""Closed-form axisymmetric solution for a long shell under prescribed radial displacements.

The radial subsystem (u_r, P_rr, P_tt) is written in terms of five integration
constants C1, C2, C3, D1, D2. C3 is tied to C2 by the coupled equilibrium
equation; the remaining four follow from a 4x4 system built from the
displacement and consistent-coupling conditions at both radii. The shear
components P_rt, P_tr vanish identically.

Numerically, D1 and D2 multiply I_nu(sqrt(a) r) and K_nu(sqrt(a) r), which
over/underflow for small L_c. The solver works with
``D1s = D1 exp(sqrt(a) r_o)`` and ``D2s = D2 exp(-sqrt(a) r_i)`` and the
exponentially scaled kernels, so every basis column stays O(1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConditioningError, DomainError
from .material import MaterialParameters, check
from .special import bessel_i0, bessel_i1, bessel_k0, bessel_k1, scaled_kernels

RADIUS_SLACK = 1e-12
COND_LIMIT = 1e13
RESIDUAL_LIMIT = 1e-10


@dataclass(frozen=True)
class ShellGeometry:
    r_i: float
    r_o: float

    def __post_init__(self):
        if not (0 < self.r_i < self.r_o and math.isfinite(self.r_o)):
            raise DomainError(f"need 0 < r_i < r_o, got r_i={self.r_i}, r_o={self.r_o}")

    @property
    def beta(self) -> float:
        return self.r_i / self.r_o


@dataclass(frozen=True)
class BoundaryData:
    U_i: float
    U_o: float

    def __post_init__(self):
        if not (math.isfinite(self.U_i) and math.isfinite(self.U_o)):
            raise DomainError(f"boundary displacements must be finite, got {self.U_i}, {self.U_o}")

    @property
    def is_zero(self) -> bool:
        return self.U_i == 0 and self.U_o == 0

    def scaled(self, factor: float) -> "BoundaryData":
        return BoundaryData(factor * self.U_i, factor * self.U_o)


@dataclass(frozen=True)
class DerivedCoefficients:
    """Material-only constants of the closed form.

    ``b`` is linear in C1; ``b_per_C1`` stores the factor. ``F1``..``F4``
    are the matrix-entry functions in their commonly quoted form (unscaled
    Bessel kernels). In that form ``F1`` lacks the ``1/r`` that ``F2``
    carries, so the solver builds its rows from the field formulas and never
    uses them.
    """

    a: float
    b_per_C1: float
    A: float
    B: float
    xi1: float
    xi2: float
    xi3: float
    F0: float
    kappa_m: float
    mu_m: float

    @property
    def sqrt_a(self) -> float:
        return math.sqrt(self.a)

    def b(self, C1: float) -> float:
        return self.b_per_C1 * C1

    def F1(self, r):
        return self.B / self.sqrt_a * bessel_i1(self.sqrt_a * np.asarray(r))

    def F2(self, r):
        r = np.asarray(r)
        return -self.B / (self.sqrt_a * r) * bessel_k1(self.sqrt_a * r)

    def F3(self, r):
        x = self.sqrt_a * np.asarray(r)
        return self.xi1 * bessel_i0(x) - bessel_i1(x) / x * self.kappa_m / self.mu_m

    def F4(self, r):
        x = self.sqrt_a * np.asarray(r)
        return self.xi1 * bessel_k0(x) + bessel_k1(x) / x * self.kappa_m / self.mu_m


def derived_coefficients(p: MaterialParameters) -> DerivedCoefficients:
    check(p)
    me, ke, mm, km = p.mu_e, p.kappa_e, p.mu_m, p.kappa_m
    stiff = p.mu_M * p.L_c**2
    a = 4.0 / stiff * (me * ke / (ke + me) + mm * km / (km + mm))
    b_per_C1 = 4.0 / stiff * ke * mm / (km + mm)
    den = me * ke * (mm + km) + mm * km * (me + ke)
    return DerivedCoefficients(
        a=a,
        b_per_C1=b_per_C1,
        A=mm * (ke + me) * (ke + km) / den,
        B=(mm * ke - me * km) / (mm * (me + ke)),
        xi1=(km + mm) / (2.0 * mm),
        xi2=-me * (km + mm) / (mm * (ke + me)),
        xi3=mm * km * (me + ke) / den,
        F0=mm * (ke + km) * (ke + me) / (2.0 * den),
        kappa_m=km,
        mu_m=mm,
    )


@dataclass(frozen=True)
class CoefficientSet:
    """Integration constants. D1/D2 are stored in scaled form (see module doc)."""

    C1: float
    C2: float
    C3: float
    D1_scaled: float
    D2_scaled: float
    sqrt_a: float
    r_i: float
    r_o: float

    @property
    def D1(self) -> float:
        with np.errstate(over="ignore", under="ignore"):
            return float(self.D1_scaled * np.exp(-self.sqrt_a * self.r_o))

    @property
    def D2(self) -> float:
        with np.errstate(over="ignore", under="ignore"):
            return float(self.D2_scaled * np.exp(self.sqrt_a * self.r_i))

    @property
    def vector(self) -> np.ndarray:
        """(C1, C2, D1s, D2s), the unknowns of the linear system."""
        return np.array([self.C1, self.C2, self.D1_scaled, self.D2_scaled])


@dataclass(frozen=True)
class FieldSample:
    """Fields at one radius or on an array of radii."""

    r: float | np.ndarray
    u_r: float | np.ndarray
    P_rr: float | np.ndarray
    P_tt: float | np.ndarray
    P_rt: float | np.ndarray
    P_tr: float | np.ndarray
    Z: float | np.ndarray
    Y: float | np.ndarray


def _basis(p: MaterialParameters, dc: DerivedCoefficients, geom: ShellGeometry, r):
    """Columns multiplying (C1, C2, D1s, D2s) for u_r, P_tt, P_rr, Z, Y.

    Each returned array has shape ``r.shape + (4,)``.
    """
    r = np.asarray(r, dtype=float)
    s = dc.sqrt_a
    x = s * r
    i0, i1, k0, k1 = scaled_kernels(x)
    e1 = np.exp(s * (r - geom.r_o))
    e2 = np.exp(-s * (r - geom.r_i))
    i0, i1 = i0 * e1, i1 * e1
    k0, k1 = k0 * e2, k1 * e2
    me, mm, ke, km = p.mu_e, p.mu_m, p.kappa_e, p.kappa_m
    ratio = km / mm
    half_minus = (km - mm) / (2.0 * mm)
    c_meso = me / (me + mm)
    c_micro = mm / (me + mm)
    p_const = dc.F0 * ke / (ke + km)
    zero = np.zeros_like(r)
    one = np.ones_like(r)

    u = np.stack([dc.F0 * r, 1.0 / r, dc.B / s * i1, -dc.B / s * k1], axis=-1)
    ptt = np.stack(
        [p_const * one, c_meso / r**2, dc.xi1 * i0 - i1 / x * ratio, dc.xi1 * k0 + k1 / x * ratio],
        axis=-1,
    )
    prr = np.stack(
        [p_const * one, -c_meso / r**2, -(half_minus * i0 - i1 / x * ratio), -(half_minus * k0 + k1 / x * ratio)],
        axis=-1,
    )
    z = np.stack([dc.b_per_C1 / dc.a * one, zero, i0, k0], axis=-1)
    tw = 2.0 * dc.xi1 + dc.xi2
    y = np.stack(
        [0.5 * dc.xi3 * one, c_micro / r**2, -(dc.xi1 * i0 - i1 / x * tw), -(dc.xi1 * k0 + k1 / x * tw)],
        axis=-1,
    )
    return u, ptt, prr, z, y


def system_matrix(p: MaterialParameters, geom: ShellGeometry, dc: DerivedCoefficients | None = None):
    """Scaled 4x4 matrix: rows u(r_i)/r_i, u(r_o)/r_o, P_tt(r_i), P_tt(r_o)."""
    dc = dc or derived_coefficients(p)
    radii = np.array([geom.r_i, geom.r_o])
    u, ptt, _, _, _ = _basis(p, dc, geom, radii)
    return np.vstack([u / radii[:, None], ptt])


def _rhs(geom: ShellGeometry, bc: BoundaryData):
    return np.array([bc.U_i / geom.r_i, bc.U_o / geom.r_o, bc.U_i / geom.r_i, bc.U_o / geom.r_o])


def condition_number(m: np.ndarray) -> float:
    """2-norm condition number after column equilibration."""
    col = np.max(np.abs(m), axis=0)
    sv = np.linalg.svd(m / col, compute_uv=False)
    return float(sv[0] / sv[-1]) if sv[-1] > 0 else math.inf


def solve_coefficients(p: MaterialParameters, geom: ShellGeometry, bc: BoundaryData) -> CoefficientSet:
    dc = derived_coefficients(p)
    s = dc.sqrt_a
    c3_factor = p.mu_m / (p.mu_e + p.mu_m)
    if bc.is_zero:
        return CoefficientSet(0.0, 0.0, 0.0, 0.0, 0.0, s, geom.r_i, geom.r_o)

    m = system_matrix(p, geom, dc)
    rhs = _rhs(geom, bc)
    col = np.max(np.abs(m), axis=0)
    if not np.all(np.isfinite(m)) or np.any(col == 0):
        raise ConditioningError("coefficient matrix has non-finite or zero columns", math.inf)
    cond = condition_number(m)
    if not cond < COND_LIMIT:
        raise ConditioningError("coefficient system is numerically singular", cond)
    y = np.linalg.solve(m / col, rhs)
    sol = y / col
    res = np.linalg.norm(m @ sol - rhs)
    if res > RESIDUAL_LIMIT * np.linalg.norm(rhs):
        raise ConditioningError(f"coefficient solve residual {res:.3e} exceeds tolerance", cond)
    C1, C2, D1s, D2s = (float(v) for v in sol)
    return CoefficientSet(C1, C2, C2 * c3_factor, D1s, D2s, s, geom.r_i, geom.r_o)


def _check_radius(geom: ShellGeometry, r):
    r = np.asarray(r, dtype=float)
    slack = RADIUS_SLACK * geom.r_o
    if np.any(np.isnan(r)) or np.any(r < geom.r_i - slack) or np.any(r > geom.r_o + slack):
        raise DomainError(f"radius outside [{geom.r_i}, {geom.r_o}]")
    return r


def field_arrays(p, geom, coeffs, r, dc=None):
    """Unchecked closed-form fields; callers outside the package should use :func:`evaluate`.

    Returns ``(u_r, P_rr, P_tt, Z, Y)`` with the shape of ``r``. The closed
    form is analytic, so radii slightly outside the shell are meaningful,
    which finite-difference stencils at the boundary rely on.
    """
    dc = dc or derived_coefficients(p)
    r = np.asarray(r, dtype=float)
    v = coeffs.vector
    if not np.any(v):
        z = np.zeros_like(r)
        return z, z.copy(), z.copy(), z.copy(), z.copy()
    u, ptt, prr, zb, yb = _basis(p, dc, geom, r)
    return u @ v, prr @ v, ptt @ v, zb @ v, yb @ v


def evaluate(p: MaterialParameters, geom: ShellGeometry, coeffs: CoefficientSet, r) -> FieldSample:
    """Closed-form fields at ``r`` (scalar or array) within the shell."""
    r_arr = _check_radius(geom, r)
    u, prr, ptt, z, y = field_arrays(p, geom, coeffs, r_arr)
    if np.ndim(r) == 0:
        u, prr, ptt, z, y = (float(v) for v in (u, prr, ptt, z, y))
        return FieldSample(float(r_arr), u, prr, ptt, 0.0, 0.0, z, y)
    zero = np.zeros_like(r_arr)
    return FieldSample(r_arr, u, prr, ptt, zero, zero.copy(), z, y)


@dataclass(frozen=True)
class RadialProfile:
    """Sampled closed-form fields plus the classical comparison.

    ``delta`` is ``None`` when ``U_o == 0`` (no normalization available).
    """

    params: MaterialParameters
    geometry: ShellGeometry
    boundary: BoundaryData
    coefficients: CoefficientSet
    fields: FieldSample
    u_classical: np.ndarray
    delta: np.ndarray | None

    @property
    def r(self) -> np.ndarray:
        return self.fields.r

    @property
    def u_r(self) -> np.ndarray:
        return self.fields.u_r

    def __len__(self):
        return len(self.fields.r)


def radial_grid(geom: ShellGeometry, n: int) -> np.ndarray:
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    return np.linspace(geom.r_i, geom.r_o, n)


def profile(p: MaterialParameters, geom: ShellGeometry, bc: BoundaryData, n: int = 1001, coeffs=None) -> RadialProfile:
    from .classical import classical_displacement, classical_solve, deviation_values

    r = radial_grid(geom, n)
    coeffs = coeffs or solve_coefficients(p, geom, bc)
    fields = evaluate(p, geom, coeffs, r)
    cc = classical_solve(geom, bc)
    u_cl = classical_displacement(cc, r)
    delta = deviation_values(fields.u_r, u_cl, bc.U_o) if bc.U_o != 0 else None
    return RadialProfile(p, geom, bc, coeffs, fields, u_cl, delta)
