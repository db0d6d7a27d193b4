"""Isotropic relaxed micromorphic moduli, plane-strain bulk moduli and validation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import HomogenizationError, ValidationError

REUSS_RTOL = 1e-12


@dataclass(frozen=True)
class MaterialParameters:
    """Moduli of the relaxed micromorphic model (plane strain).

    ``mu_M`` and ``kappa_M`` are the macro (homogenized) moduli. When left as
    ``None`` they are filled from the Reuss formulas; when given they are
    kept as-is so that :func:`validate` can check the homogenization.

    ``mu_c`` is stored for completeness but is inert for the axisymmetric
    shell: no solver path reads it.
    """

    mu_e: float
    lambda_e: float
    mu_m: float
    lambda_m: float
    L_c: float
    mu_c: float = 0.0
    mu_M: float | None = None
    kappa_M: float | None = None

    def __post_init__(self):
        ke, km = self.kappa_e, self.kappa_m
        if self.mu_M is None:
            object.__setattr__(self, "mu_M", _harmonic(self.mu_e, self.mu_m))
        if self.kappa_M is None:
            object.__setattr__(self, "kappa_M", _harmonic(ke, km))

    @property
    def kappa_e(self) -> float:
        return self.lambda_e + self.mu_e

    @property
    def kappa_m(self) -> float:
        return self.lambda_m + self.mu_m

    @property
    def lambda_M(self) -> float:
        return self.kappa_M - self.mu_M

    def with_mu_c(self, mu_c: float) -> "MaterialParameters":
        return MaterialParameters(
            self.mu_e, self.lambda_e, self.mu_m, self.lambda_m, self.L_c, mu_c, self.mu_M, self.kappa_M
        )

    def ratios(self) -> tuple[float, float, float]:
        """(G1, G2, G3) = (mu_m, kappa_m, kappa_M) / mu_M."""
        return self.mu_m / self.mu_M, self.kappa_m / self.mu_M, self.kappa_M / self.mu_M


def _harmonic(a, b):
    s = a + b
    return a * b / s if s != 0 else math.inf


@dataclass(frozen=True)
class DimensionlessSet:
    """Nondimensional description of a shell problem.

    g1, g2, g3 are mu_m, kappa_m, kappa_M over mu_M; beta = r_i/r_o;
    lc_ratio = r_o/L_c; delta = U_i/U_o.
    """

    g1: float
    g2: float
    g3: float
    beta: float
    lc_ratio: float
    delta: float = 0.0

    def violations(self) -> list[str]:
        out = []
        if not self.g1 > 1:
            out.append(f"g1 > 1 violated (g1={self.g1})")
        if not self.g3 > 1:
            out.append(f"g3 > 1 violated (g3={self.g3})")
        if not self.g2 > self.g1:
            out.append(f"g2 > g1 violated (g2={self.g2}, g1={self.g1})")
        if not self.g2 > self.g3:
            out.append(f"g2 > g3 violated (g2={self.g2}, g3={self.g3})")
        if not 0 < self.beta < 1:
            out.append(f"0 < beta < 1 violated (beta={self.beta})")
        if not self.lc_ratio > 0:
            out.append(f"lc_ratio > 0 violated (lc_ratio={self.lc_ratio})")
        if not math.isfinite(self.delta):
            out.append(f"delta must be finite (delta={self.delta})")
        return out


def from_dimensionless(
    g: DimensionlessSet, mu_M: float = 1.0, r_o: float = 1.0, mu_c: float = 0.0
) -> MaterialParameters:
    """Invert the Reuss relations for the meso moduli given (G1, G2, G3)."""
    gap = []
    if not g.g1 > 1:
        gap.append(f"mu_m - mu_M = {(g.g1 - 1) * mu_M} must be > 0 (g1 > 1)")
    if not g.g2 > g.g3:
        gap.append(f"kappa_m - kappa_M = {(g.g2 - g.g3) * mu_M} must be > 0 (g2 > g3)")
    if gap:
        raise HomogenizationError(gap)
    bad = g.violations()
    if not mu_M > 0:
        bad.append(f"mu_M > 0 violated (mu_M={mu_M})")
    if not r_o > 0:
        bad.append(f"r_o > 0 violated (r_o={r_o})")
    if bad:
        raise ValidationError(bad)

    mu_m = g.g1 * mu_M
    kappa_m = g.g2 * mu_M
    kappa_M = g.g3 * mu_M
    mu_e = mu_M * mu_m / (mu_m - mu_M)
    kappa_e = kappa_M * kappa_m / (kappa_m - kappa_M)
    p = MaterialParameters(
        mu_e=mu_e,
        lambda_e=kappa_e - mu_e,
        mu_m=mu_m,
        lambda_m=kappa_m - mu_m,
        L_c=r_o / g.lc_ratio,
        mu_c=mu_c,
        mu_M=mu_M,
        kappa_M=kappa_M,
    )
    check(p)
    return p


@dataclass(frozen=True)
class ValidityReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def _close(a, b, rtol=REUSS_RTOL):
    return abs(a - b) <= rtol * max(abs(a), abs(b))


def validate(p: MaterialParameters) -> ValidityReport:
    """Collect every violated positivity, homogenization and admissibility inequality."""
    v = []
    ke, km = p.kappa_e, p.kappa_m
    for name, val in [("mu_m", p.mu_m), ("mu_e", p.mu_e), ("kappa_m", km), ("kappa_e", ke)]:
        if not val > 0:
            v.append(f"{name} > 0 violated ({name}={val})")
    if not p.mu_c >= 0:
        v.append(f"mu_c >= 0 violated (mu_c={p.mu_c})")
    if not p.L_c > 0:
        v.append(f"L_c > 0 violated (L_c={p.L_c})")
    if not (p.mu_M > 0 and _close(1 / p.mu_M, 1 / p.mu_e + 1 / p.mu_m)):
        v.append(f"Reuss gap: 1/mu_M != 1/mu_e + 1/mu_m (mu_M={p.mu_M})")
    if not (p.kappa_M > 0 and _close(1 / p.kappa_M, 1 / ke + 1 / km)):
        v.append(f"Reuss gap: 1/kappa_M != 1/kappa_e + 1/kappa_m (kappa_M={p.kappa_M})")
    if not p.mu_e > p.mu_M:
        v.append(f"mu_e > mu_M violated (mu_e={p.mu_e}, mu_M={p.mu_M})")
    if not ke > p.kappa_M:
        v.append(f"kappa_e > kappa_M violated (kappa_e={ke}, kappa_M={p.kappa_M})")
    if not p.kappa_M > p.mu_M:
        v.append(f"kappa_M > mu_M violated (kappa_M={p.kappa_M}, mu_M={p.mu_M})")
    if not km > p.mu_m:
        v.append(f"kappa_m > mu_m violated (kappa_m={km}, mu_m={p.mu_m})")
    return ValidityReport(v)


def check(p: MaterialParameters) -> MaterialParameters:
    report = validate(p)
    if not report.ok:
        raise ValidationError(report.violations)
    return p


def energy_density(p: MaterialParameters, grad_u, P, curl_p) -> float:
    """Strain energy density for in-plane 2x2 ``grad_u`` and ``P``.

    ``curl_p`` is the single curl component that survives the in-plane
    reduction (a scalar, or an array broadcasting against the leading axes
    of ``grad_u``).
    """
    check(p)
    grad_u = np.asarray(grad_u, dtype=float)
    P = np.asarray(P, dtype=float)
    e = grad_u - P
    sym_e = 0.5 * (e + np.swapaxes(e, -1, -2))
    skew_e = 0.5 * (e - np.swapaxes(e, -1, -2))
    sym_p = 0.5 * (P + np.swapaxes(P, -1, -2))
    tr_e = np.trace(e, axis1=-2, axis2=-1)
    tr_p = np.trace(P, axis1=-2, axis2=-1)
    w = (
        p.mu_e * np.sum(sym_e**2, axis=(-2, -1))
        + 0.5 * p.lambda_e * tr_e**2
        + p.mu_c * np.sum(skew_e**2, axis=(-2, -1))
        + p.mu_m * np.sum(sym_p**2, axis=(-2, -1))
        + 0.5 * p.lambda_m * tr_p**2
        + 0.5 * p.mu_M * p.L_c**2 * np.asarray(curl_p, dtype=float) ** 2
    )
    return float(w) if np.ndim(w) == 0 else w
