"""Independent checks of the closed form.

* :func:`residual_check` plugs the closed-form fields into the six strong-form
  equilibrium equations, using Richardson-extrapolated central differences.
* :func:`fd_solve` solves the radial subsystem from scratch with second-order
  finite differences on a uniform grid (banded direct solve).
* :func:`energy_check` integrates the strain energy along a solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.integrate import trapezoid
from scipy.linalg import LinAlgError, solve_banded

from .errors import OracleError
from .material import MaterialParameters, energy_density
from .solver import (
    BoundaryData,
    CoefficientSet,
    ShellGeometry,
    derived_coefficients,
    evaluate,
    field_arrays,
    solve_coefficients,
)

# balance of linear momentum (r, theta) and of the micro-distortion components
EQUATIONS = ("force_r", "micro_rr", "micro_tt", "force_t", "micro_rt", "micro_tr")
RADIAL = ("force_r", "micro_rr", "micro_tt")
SHEAR = ("force_t", "micro_rt", "micro_tr")
DEFAULT_STEP = 1e-4
RIDDERS_START = 0.05
RIDDERS_LEVELS = 12
RIDDERS_SHRINK = 1.4


def _richardson(f, r, h):
    """Values, first and second derivatives of every array ``f`` returns.

    Central differences at steps h and h/2 with one Richardson level.
    """
    shifts = np.array([0.0, -h, h, -0.5 * h, 0.5 * h])
    grid = (r[None, :] + shifts[:, None]).ravel()
    out = []
    for col in f(grid):
        f0, fm, fp, fmh, fph = np.asarray(col).reshape(5, -1)
        d1h = (fp - fm) / (2 * h)
        d1q = (fph - fmh) / h
        d2h = (fp - 2 * f0 + fm) / h**2
        d2q = (fph - 2 * f0 + fmh) / (0.25 * h**2)
        out.append((f0, (4 * d1q - d1h) / 3, (4 * d2q - d2h) / 3))
    return out


def _ridders_table(d, shrink):
    """Pointwise Neville extrapolation of difference quotients ``d[level]``.

    Each point keeps the entry with the smallest error estimate and stops
    once the diagonal starts to grow again (round-off takes over).
    """
    levels = d.shape[0]
    best = d[0].copy()
    err = np.full_like(best, np.inf)
    done = np.zeros(best.shape, dtype=bool)
    prev = [d[0]]
    for i in range(1, levels):
        cur = [d[i]]
        fac = shrink**2
        for j in range(1, i + 1):
            cur.append((cur[j - 1] * fac - prev[j - 1]) / (fac - 1))
            fac *= shrink**2
            e = np.maximum(np.abs(cur[j] - cur[j - 1]), np.abs(cur[j] - prev[j - 1]))
            upd = ~done & (e <= err)
            err = np.where(upd, e, err)
            best = np.where(upd, cur[j], best)
        done |= np.abs(cur[i] - prev[i - 1]) >= 2 * err
        prev = cur
    return best


def _ridders(f, r, h0, levels=RIDDERS_LEVELS, shrink=RIDDERS_SHRINK):
    """Like :func:`_richardson` but with an adaptive extrapolation tableau."""
    hs = h0 / shrink ** np.arange(levels)
    shifts = np.concatenate([[0.0], -hs, hs])
    grid = (r[None, :] + shifts[:, None]).ravel()
    out = []
    for col in f(grid):
        c = np.asarray(col).reshape(len(shifts), -1)
        f0, fm, fp = c[0], c[1 : levels + 1], c[levels + 1 :]
        d1 = _ridders_table((fp - fm) / (2 * hs[:, None]), shrink)
        d2 = _ridders_table((fp - 2 * f0 + fm) / hs[:, None] ** 2, shrink)
        out.append((f0, d1, d2))
    return out


def intrinsic_length(p: MaterialParameters, geom: ShellGeometry) -> float:
    """Shortest length over which the closed-form fields vary."""
    s = derived_coefficients(p).sqrt_a
    return min(geom.r_i, 1.0 / s, geom.r_o - geom.r_i)


def _differentiate(p, geom, radial, r, h):
    """(value, d/dr, d2/dr2) of the three arrays returned by ``radial(r)``.

    ``h=None`` selects Ridders extrapolation started at a fraction of the
    intrinsic length; a number selects a fixed step ``h * (r_o - r_i)``
    with one Richardson level.
    """
    if h is None:
        return _ridders(radial, r, RIDDERS_START * intrinsic_length(p, geom))
    return _richardson(radial, r, h * (geom.r_o - geom.r_i))


def closed_form_fields(p, geom, coeffs):
    """``r -> (u_r, P_rr, P_tt)`` for the closed form with ``coeffs``."""
    dc = derived_coefficients(p)
    return lambda rr: field_arrays(p, geom, coeffs, rr, dc)[:3]


@dataclass
class ResidualReport:
    """Per-equation maximum residuals on interior sample radii.

    ``normalized[eq] = max_abs_residual[eq] / normalization[eq]`` where the
    normalization is the largest magnitude of any individual term of that
    equation over the grid (0/0 is reported as 0).
    """

    max_abs_residual: dict[str, float]
    normalization: dict[str, float]
    normalized: dict[str, float]
    grid: np.ndarray = field(repr=False)

    def worst(self, eqs=EQUATIONS) -> float:
        return max(self.normalized[e] for e in eqs)


def _summarize(terms, residual):
    res = float(np.max(np.abs(residual)))
    ref = float(max(np.max(np.abs(t)) for t in terms))
    return res, ref, (res / ref if ref > 0 else (0.0 if res == 0 else math.inf))


def _radial_terms(p: MaterialParameters, r, u, prr, ptt, shear):
    """Individual terms of the equilibrium equations, LHS - RHS = sum(terms).

    ``u``, ``prr``, ``ptt`` and the two shear entries of ``shear`` are
    ``(value, d/dr, d2/dr2)`` triples on the grid ``r``.
    """
    me, le, mm, lm, mc = p.mu_e, p.lambda_e, p.mu_m, p.lambda_m, p.mu_c
    stiff = p.mu_M * p.L_c**2
    k1 = 2 * me + le
    (u0, u1, u2), (pr0, pr1, _), (pt0, pt1, pt2) = u, prr, ptt
    x = u1 - pr0
    y = u0 / r - pt0
    dx = u2 - pr1
    dy = u1 / r - u0 / r**2 - pt1
    z = pr0 + pt0
    c = pt1 + (pt0 - pr0) / r
    dc = pt2 + (pt1 - pr1) / r - (pt0 - pr0) / r**2
    force_r = [k1 * dx, le * dy, 2 * me * dy, 2 * me * c]
    micro_rr = [k1 * x, le * y, -2 * mm * pr0, -lm * z, stiff * c / r]
    micro_tt = [k1 * y, le * x, -2 * mm * pt0, -lm * z, stiff * dc]

    (a0, a1, a2), (b0, b1, b2) = shear  # a = P_rt, b = P_tr
    s0, s1 = a0 + b0, a1 + b1
    force_t = [me * s1, 2 * me * s0 / r, -mc * (a1 - b1)]
    micro_rt = [(me + mm) * s0, mc * (a0 - b0), stiff * b1 / r, stiff * s0 / r**2]
    micro_tr = [(me + mm) * s0, mc * (b0 - a0), -stiff * b2, stiff * s0 / r**2, -stiff * s1 / r]
    return dict(zip(EQUATIONS, (force_r, micro_rr, micro_tt, force_t, micro_rt, micro_tr)))


def field_residuals(p: MaterialParameters, geom: ShellGeometry, fields, n: int = 1000, h: float | None = None, shear=None) -> ResidualReport:
    """Strong-form residuals of arbitrary radial fields at ``n`` interior radii.

    ``fields(r)`` returns ``(u_r, P_rr, P_tt)`` and must accept radii slightly
    outside the shell. ``shear(r)`` returns ``(P_rt, P_tr)``; zero when omitted.
    """
    if n < 10:
        raise ValueError(f"need n >= 10 interior samples, got {n}")
    r = np.linspace(geom.r_i, geom.r_o, n + 2)[1:-1]
    u, prr, ptt = _differentiate(p, geom, fields, r, h)
    rt, tr = shear(r) if shear is not None else (np.zeros_like(r), np.zeros_like(r))

    def shear_triple(vals):
        d1 = np.gradient(vals, r, edge_order=2)
        return vals, d1, np.gradient(d1, r, edge_order=2)

    terms = _radial_terms(p, r, u, prr, ptt, (shear_triple(rt), shear_triple(tr)))
    raw, norm, rel = {}, {}, {}
    for eq, ts in terms.items():
        raw[eq], norm[eq], rel[eq] = _summarize(ts, sum(ts))
    return ResidualReport(raw, norm, rel, r)


def residual_check(
    p: MaterialParameters,
    geom: ShellGeometry,
    coeffs: CoefficientSet,
    n: int = 1000,
    h: float | None = None,
) -> ResidualReport:
    """Strong-form residuals of the closed form at ``n`` interior radii.

    ``h`` is an optional fixed differentiation step as a fraction of the wall
    thickness; by default the step is chosen adaptively per point.
    """

    def shear(r):
        s = evaluate(p, geom, coeffs, r)
        return s.P_rt, s.P_tr

    return field_residuals(p, geom, closed_form_fields(p, geom, coeffs), n, h, shear)


# ------------------------------------------------------------------ FD oracle


@dataclass
class FdSolution:
    r: np.ndarray
    u_r: np.ndarray
    P_rr: np.ndarray
    P_tt: np.ndarray
    order: int = 2


def _first_derivative(n, dr):
    """Central differences inside, second-order one-sided at both ends."""
    half = np.full(n - 1, 0.5 / dr)
    d = sp.diags([-half, half], [-1, 1], shape=(n, n), format="lil")
    d[0, 0:3] = np.array([-3.0, 4.0, -1.0]) / (2 * dr)
    d[n - 1, n - 3 : n] = np.array([1.0, -4.0, 3.0]) / (2 * dr)
    return d.tocsr()


def _second_derivative(n, dr):
    """Three-point second difference; end rows are left empty."""
    main = np.full(n, -2.0)
    main[[0, -1]] = 0.0
    lo = np.ones(n - 1)
    hi = np.ones(n - 1)
    lo[-1] = 0.0
    hi[0] = 0.0
    return sp.diags([lo, main, hi], [-1, 0, 1], format="csr") / dr**2


def _half_node_operators(n, dr):
    """Difference and average from nodes to the n-1 cell midpoints."""
    one = np.ones(n - 1)
    diff = sp.diags([-one, one], [0, 1], shape=(n - 1, n)) / dr
    avg = sp.diags([0.5 * one, 0.5 * one], [0, 1], shape=(n - 1, n))
    return diff.tocsr(), avg.tocsr()


def _midpoints_to_nodes(n, dr):
    """Midpoint values back to nodes: average inside, linear extrapolation at the ends;
    and the midpoint difference at interior nodes (end rows empty)."""
    m = sp.diags([0.5 * np.ones(n - 1), 0.5 * np.ones(n - 1)], [-1, 0], shape=(n, n - 1), format="lil")
    m[0, 0:2] = [1.5, -0.5]
    m[n - 1, n - 3 : n - 1] = [-0.5, 1.5]
    one = np.ones(n - 1)
    d = sp.diags([-one, one], [-1, 0], shape=(n, n - 1), format="lil") / dr
    d[0, :] = 0
    d[n - 1, :] = 0
    return m.tocsr(), d.tocsr()


def fd_system(p: MaterialParameters, geom: ShellGeometry, bc: BoundaryData, n: int):
    """Sparse matrix, right-hand side and grid of the discrete radial problem.

    Unknowns are interleaved per node as (u_r, P_rr, P_tt). Per node the three
    rows are the radial balance, the P_rr balance and the P_tt balance;
    at both end nodes the first and third rows are replaced by the Dirichlet
    conditions on u_r and P_tt, while the P_rr balance is kept with one-sided
    stencils.

    The curl quantity ``c = P_tt' + (P_tt - P_rr)/r`` is formed at cell
    midpoints. The P_rr balance uses its nodal average and the P_tt balance
    its midpoint difference, so both see the same discrete ``c``. Without
    that pairing the discretization error is amplified by mu_M L_c^2 and the
    large-L_c presets lose about three digits.
    """
    if n < 32:
        raise ValueError(f"fd_solve needs n >= 32 grid points, got {n}")
    r = np.linspace(geom.r_i, geom.r_o, n)
    dr = (geom.r_o - geom.r_i) / (n - 1)
    me, le, mm, lm = p.mu_e, p.lambda_e, p.mu_m, p.lambda_m
    stiff = p.mu_M * p.L_c**2
    k1 = 2 * me + le

    idx = np.arange(n)
    Eu, Ep, Et = (sp.csr_matrix((np.ones(n), (idx, 3 * idx + k)), shape=(n, 3 * n)) for k in range(3))
    D1 = _first_derivative(n, dr)
    D2 = _second_derivative(n, dr)
    Rinv = sp.diags(1.0 / r)
    Dh, Ah = _half_node_operators(n, dr)
    to_nodes, mid_diff = _midpoints_to_nodes(n, dr)

    X = D1 @ Eu - Ep
    Y = Rinv @ Eu - Et
    Z = Ep + Et
    g = Rinv @ (Et - Ep)
    c_mid = Dh @ Et + Ah @ g
    force_r = k1 * (D2 @ Eu - D1 @ Ep) + (le + 2 * me) * (D1 @ Rinv @ Eu - D1 @ Et) + 2 * me * (D1 @ Et + g)
    micro_rr = k1 * X + le * Y - 2 * mm * Ep - lm * Z + stiff * (Rinv @ to_nodes @ c_mid)
    micro_tt = k1 * Y + le * X - 2 * mm * Et - lm * Z + stiff * (mid_diff @ c_mid)

    rows = sp.vstack([force_r, micro_rr, micro_tt]).tocsr()
    # rows are grouped by equation; reorder to node-interleaved
    order = np.column_stack([idx, n + idx, 2 * n + idx]).ravel()
    A = rows[order, :].tolil()
    rhs = np.zeros(3 * n)
    for j, U in ((0, bc.U_i), (n - 1, bc.U_o)):
        A[3 * j, :] = 0
        A[3 * j, 3 * j] = 1.0
        rhs[3 * j] = U
        A[3 * j + 2, :] = 0
        A[3 * j + 2, 3 * j + 2] = 1.0
        rhs[3 * j + 2] = U / r[j]
    return A.tocsr(), rhs, r


def _banded(A):
    coo = A.tocoo()
    lower = int(np.max(coo.row - coo.col))
    upper = int(np.max(coo.col - coo.row))
    ab = np.zeros((lower + upper + 1, A.shape[1]))
    ab[upper + coo.row - coo.col, coo.col] = coo.data
    return (lower, upper), ab


def fd_solve(p: MaterialParameters, geom: ShellGeometry, bc: BoundaryData, n: int = 1024) -> FdSolution:
    A, rhs, r = fd_system(p, geom, bc, n)
    if not np.any(rhs):
        z = np.zeros(n)
        return FdSolution(r, z, z.copy(), z.copy())
    bands, ab = _banded(A)
    try:
        with np.errstate(all="raise"):
            x = solve_banded(bands, ab, rhs)
    except (LinAlgError, FloatingPointError) as exc:
        cond = float(np.linalg.cond(A.toarray())) if A.shape[0] <= 3000 else math.nan
        raise OracleError(f"discrete system singular on n={n} grid (condition estimate {cond:.3e}): {exc}") from exc
    x = x.reshape(n, 3)
    return FdSolution(r, x[:, 0].copy(), x[:, 1].copy(), x[:, 2].copy())


def fd_error(p, geom, bc, n, coeffs=None) -> float:
    """max nodal |u_fd - u_closed| / max |u_closed|."""
    coeffs = coeffs or solve_coefficients(p, geom, bc)
    fd = fd_solve(p, geom, bc, n)
    exact = evaluate(p, geom, coeffs, fd.r).u_r
    scale = np.max(np.abs(exact))
    if scale == 0:
        return float(np.max(np.abs(fd.u_r)))
    return float(np.max(np.abs(fd.u_r - exact)) / scale)


def observed_order(p, geom, bc, n_coarse=512, n_fine=2048, coeffs=None):
    """Observed FD convergence order between ``n_coarse`` and ``n_fine`` grid points.

    Intermediate doublings are solved too and returned with the errors.
    """
    ns = []
    n = n_coarse
    while n <= n_fine:
        ns.append(n)
        n *= 2
    errs = np.array([fd_error(p, geom, bc, k, coeffs) for k in ns])
    hs = (geom.r_o - geom.r_i) / (np.array(ns) - 1)
    order = np.log(errs[0] / errs[-1]) / np.log(hs[0] / hs[-1])
    return float(order), dict(zip(ns, errs.tolist()))


# ------------------------------------------------------------------ energy


def _energy(p, r, du, u, prr, ptt, dptt):
    n = len(r)
    grad_u = np.zeros((n, 2, 2))
    grad_u[:, 0, 0] = du
    grad_u[:, 1, 1] = u / r
    P = np.zeros((n, 2, 2))
    P[:, 0, 0] = prr
    P[:, 1, 1] = ptt
    curl = dptt + (ptt - prr) / r
    w = energy_density(p, grad_u, P, curl)
    return float(trapezoid(w * 2 * np.pi * r, r))


def energy_check(p: MaterialParameters, geom: ShellGeometry, bc: BoundaryData, n: int = 1001, coeffs=None) -> float:
    """Strain energy per unit length along the closed-form solution (trapezoid rule)."""
    coeffs = coeffs or solve_coefficients(p, geom, bc)
    r = np.linspace(geom.r_i, geom.r_o, n)
    fields = closed_form_fields(p, geom, coeffs)
    (u, du, _), (prr, _, _), (ptt, dptt, _) = _differentiate(p, geom, fields, r, DEFAULT_STEP)
    return _energy(p, r, du, u, prr, ptt, dptt)


def fd_energy(p: MaterialParameters, sol: FdSolution) -> float:
    du = np.gradient(sol.u_r, sol.r, edge_order=2)
    dptt = np.gradient(sol.P_tt, sol.r, edge_order=2)
    return _energy(p, sol.r, du, sol.u_r, sol.P_rr, sol.P_tt, dptt)


def format_report(metrics: dict) -> str:
    """Render verification metrics as ``key: value`` lines."""
    lines = []
    for k, v in metrics.items():
        if isinstance(v, float):
            v = f"{v:.6e}"
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"
