import numpy as np
import pytest
from hypothesis import given, settings

from micromorphic_shell import BoundaryData, DimensionlessSet, classical_solve, solve_coefficients
from micromorphic_shell.errors import OracleError
from micromorphic_shell.verification import (
    RADIAL,
    SHEAR,
    energy_check,
    fd_energy,
    fd_error,
    fd_solve,
    fd_system,
    field_residuals,
    format_report,
    observed_order,
    residual_check,
)

from conftest import FIG2, admissible_sets, setup


def test_residuals_small_on_closed_form(fig2):
    p, geom, bc = fig2
    rep = residual_check(p, geom, solve_coefficients(p, geom, bc))
    assert rep.worst(RADIAL) <= 1e-7
    assert all(rep.max_abs_residual[e] == 0 for e in SHEAR)
    assert len(rep.grid) == 1000


@settings(max_examples=25)
@given(admissible_sets(lc_min=0.05, lc_max=50.0))
def test_residuals_small_on_random_sets(g):
    p, geom, bc = setup(g)
    rep = residual_check(p, geom, solve_coefficients(p, geom, bc), n=200)
    assert rep.worst(RADIAL) <= 1e-7


def test_residuals_detect_perturbed_field(fig2, monkeypatch):
    import micromorphic_shell.verification as ver

    p, geom, bc = fig2
    c = solve_coefficients(p, geom, bc)
    exact = ver.field_arrays

    def perturbed(*args, **kw):
        u, prr, ptt, z, y = exact(*args, **kw)
        return u, prr, ptt + 1e-4 * args[3] ** 2, z, y

    monkeypatch.setattr(ver, "field_arrays", perturbed)
    assert residual_check(p, geom, c).worst(RADIAL) > 1e-6


def test_fixed_step_differentiation_agrees(fig2):
    p, geom, bc = fig2
    rep = residual_check(p, geom, solve_coefficients(p, geom, bc), h=1e-3)
    assert rep.worst(RADIAL) <= 1e-5


def test_fd_matches_closed_form(fig2):
    p, geom, bc = fig2
    assert fd_error(p, geom, bc, 1024) <= 1e-3


def test_fd_second_order(fig2):
    p, geom, bc = fig2
    order, errs = observed_order(p, geom, bc, 512, 2048)
    assert abs(order - 2.0) <= 0.3
    assert list(errs) == [512, 1024, 2048]
    assert errs[512] > errs[1024] > errs[2048]


def test_fd_boundary_values(fig2):
    p, geom, bc = fig2
    sol = fd_solve(p, geom, bc, 256)
    assert sol.u_r[0] == pytest.approx(bc.U_i, abs=1e-11)
    assert sol.u_r[-1] == pytest.approx(bc.U_o, abs=1e-11)
    assert sol.P_tt[-1] == pytest.approx(bc.U_o / geom.r_o, abs=1e-11)


def test_fd_zero_data(fig2):
    p, geom, _ = fig2
    sol = fd_solve(p, geom, BoundaryData(0.0, 0.0), 64)
    assert not np.any(sol.u_r)


def test_fd_system_is_banded(fig2):
    p, geom, bc = fig2
    A, rhs, r = fd_system(p, geom, bc, 64)
    rows, cols = A.nonzero()
    assert A.shape == (192, 192)
    assert np.max(np.abs(rows - cols)) <= 8


def test_fd_singular_system_raises(fig2, monkeypatch):
    import scipy.sparse as sp

    import micromorphic_shell.verification as ver

    p, geom, bc = fig2
    n = 16

    def broken(*args):
        A = sp.lil_matrix((3 * n, 3 * n))
        A[0, 0] = 1.0
        rhs = np.ones(3 * n)
        return A.tocsr(), rhs, np.linspace(geom.r_i, geom.r_o, n)

    monkeypatch.setattr(ver, "fd_system", broken)
    with pytest.raises(OracleError, match="n=16"):
        fd_solve(p, geom, bc, n)


@settings(max_examples=15)
@given(admissible_sets(lc_min=0.1, lc_max=20.0))
def test_energy_nonnegative_and_matches_fd(g):
    p, geom, bc = setup(g)
    e = energy_check(p, geom, bc)
    assert e >= 0
    assert fd_energy(p, fd_solve(p, geom, bc, 1024)) == pytest.approx(e, rel=1e-3)


def test_energy_quadratic_in_boundary_data(fig2):
    p, geom, bc = fig2
    e1 = energy_check(p, geom, bc)
    e3 = energy_check(p, geom, bc.scaled(3.0))
    assert e3 == pytest.approx(9 * e1, rel=1e-10)


def test_energy_zero_for_zero_data(fig2):
    p, geom, _ = fig2
    assert energy_check(p, geom, BoundaryData(0.0, 0.0)) == 0.0


def test_format_report():
    text = format_report({"a": 1.5, "b": "x"})
    assert text == "a: 1.500000e+00\nb: x\n"


def test_residual_check_rejects_tiny_grid(fig2):
    p, geom, bc = fig2
    with pytest.raises(ValueError):
        residual_check(p, geom, solve_coefficients(p, geom, bc), n=3)


def test_fd_fine_grid_error(fig2):
    p, geom, bc = fig2
    assert fd_error(p, geom, bc, 2048) <= 1e-4


def test_fd_independent_of_mu_c(fig2):
    p, geom, bc = fig2
    a = fd_solve(p, geom, bc, 256)
    b = fd_solve(p.with_mu_c(100.0), geom, bc, 256)
    assert np.array_equal(a.u_r, b.u_r) and np.array_equal(a.P_tt, b.P_tt)


def test_zero_data_residuals_exactly_zero(fig2):
    p, geom, _ = fig2
    rep = residual_check(p, geom, solve_coefficients(p, geom, BoundaryData(0.0, 0.0)), n=50)
    assert all(v == 0 for v in rep.max_abs_residual.values())


@pytest.mark.parametrize("g", [FIG2, DimensionlessSet(2.0, 4.0, 2.0, 0.3, 2.0, 0.4), DimensionlessSet(3.0, 7.0, 2.5, 0.5, 1.0, -0.5)])
def test_classical_impostor_rejected(g):
    # elastic Lame field with P = grad u does not solve the micromorphic equations
    p, geom, bc = setup(g)
    cc = classical_solve(geom, bc)
    a, b = cc.alpha, cc.beta_coef
    rep = field_residuals(p, geom, lambda r: (a * r + b / r, a - b / r**2, a + b / r**2))
    assert rep.worst(RADIAL) > 1e-2


@settings(max_examples=20)
@given(admissible_sets(lc_min=0.1, lc_max=20.0))
def test_energy_strictly_positive_and_quadratic(g):
    p, geom, bc = setup(g)
    e1 = energy_check(p, geom, bc)
    assert e1 > 0
    assert energy_check(p, geom, bc.scaled(2.0)) == pytest.approx(4 * e1, rel=1e-8)
