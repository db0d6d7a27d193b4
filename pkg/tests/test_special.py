import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from micromorphic_shell import special
from micromorphic_shell.errors import DomainError
from micromorphic_shell.special import (
    I_SEAM,
    K_SEAM,
    bessel_i0,
    bessel_i0_scaled,
    bessel_i1,
    bessel_i1_scaled,
    bessel_k0,
    bessel_k0_scaled,
    bessel_k1,
    bessel_k1_scaled,
    evaluate_kernel,
    scaled_kernels,
)

mpmath.mp.dps = 40

ORACLES = {
    bessel_i0: lambda x: mpmath.besseli(0, x),
    bessel_i1: lambda x: mpmath.besseli(1, x),
    bessel_k0: lambda x: mpmath.besselk(0, x),
    bessel_k1: lambda x: mpmath.besselk(1, x),
}
SCALED = {
    bessel_i0_scaled: lambda x: mpmath.besseli(0, x) * mpmath.exp(-x),
    bessel_i1_scaled: lambda x: mpmath.besseli(1, x) * mpmath.exp(-x),
    bessel_k0_scaled: lambda x: mpmath.besselk(0, x) * mpmath.exp(x),
    bessel_k1_scaled: lambda x: mpmath.besselk(1, x) * mpmath.exp(x),
}


def rel(a, b):
    return abs(a - float(b)) / abs(float(b))


@pytest.mark.parametrize("f", list(ORACLES), ids=lambda f: f.__name__)
def test_reference_values_at_one(f):
    assert rel(f(1.0), ORACLES[f](1)) <= 1e-12


def test_reference_values_literal():
    assert bessel_i0(1.0) == pytest.approx(1.2660658777520082, rel=1e-14)
    assert bessel_i1(1.0) == pytest.approx(0.5651591039924851, rel=1e-14)
    assert bessel_k0(1.0) == pytest.approx(0.42102443824070834, rel=1e-14)
    assert bessel_k1(1.0) == pytest.approx(0.6019072301972346, rel=1e-14)


@pytest.mark.parametrize("f", list(ORACLES), ids=lambda f: f.__name__)
def test_against_oracle_on_grid(f):
    xs = np.concatenate([np.geomspace(1e-3, 700, 120), [K_SEAM, I_SEAM]])
    for x in xs:
        assert rel(f(float(x)), ORACLES[f](mpmath.mpf(float(x)))) <= 1e-12, x


@pytest.mark.parametrize("f", list(SCALED), ids=lambda f: f.__name__)
def test_scaled_against_oracle(f):
    for x in np.geomspace(1e-3, 1e5, 80):
        assert rel(f(float(x)), SCALED[f](mpmath.mpf(float(x)))) <= 1e-12, x


@given(st.floats(1e-3, 100.0))
def test_wronskian(x):
    w = bessel_i0(x) * bessel_k1(x) + bessel_i1(x) * bessel_k0(x)
    assert abs(w * x - 1.0) <= 1e-12


@given(st.floats(1e-3, 1e4))
def test_wronskian_scaled(x):
    i0, i1, k0, k1 = scaled_kernels(x)
    assert abs(x * (i0 * k1 + i1 * k0) - 1.0) <= 1e-12


def _d5(f, x, h=1e-4):
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)


@given(st.floats(0.1, 200.0))
def test_derivative_relations(x):
    # I0' = I1 and K0' = -K1
    assert _d5(bessel_i0, x) == pytest.approx(bessel_i1(x), rel=1e-9)
    assert _d5(bessel_k0, x) == pytest.approx(-bessel_k1(x), rel=1e-9)


@given(st.floats(1e-3, 700.0))
def test_scaled_consistency(x):
    assert bessel_i0_scaled(x) == pytest.approx(bessel_i0(x) * math.exp(-x), rel=1e-13)
    assert bessel_k1_scaled(x) == pytest.approx(bessel_k1(x) * math.exp(x), rel=1e-13)


@pytest.mark.parametrize("seam", [I_SEAM, K_SEAM])
@pytest.mark.parametrize("f", list(ORACLES), ids=lambda f: f.__name__)
def test_seam_continuity(f, seam):
    lo, hi = np.nextafter(seam, 0), np.nextafter(seam, np.inf)
    assert rel(f(lo), f(hi)) <= 1e-13


def test_scaled_finite_at_large_argument():
    vals = scaled_kernels(1e6)
    assert all(np.isfinite(v) and v > 0 for v in vals)
    # leading asymptotics: I e^-x ~ K e^x / pi ~ 1/sqrt(2 pi x)
    assert vals[0] == pytest.approx(1 / math.sqrt(2 * math.pi * 1e6), rel=1e-6)
    assert vals[2] == pytest.approx(math.sqrt(math.pi / 2e6), rel=1e-6)


def test_unscaled_overflow_and_underflow_limits():
    assert bessel_i0(800.0) == math.inf
    assert bessel_k0(800.0) == 0.0


def test_small_argument_limits():
    assert bessel_i0(0.0) == 1.0
    assert bessel_i1(0.0) == 0.0
    assert bessel_k0(1e-10) == pytest.approx(-math.log(5e-11) - special.EULER_GAMMA, rel=1e-12)


def test_array_input():
    x = np.array([0.5, 1.0, 50.0, 500.0])
    out = bessel_k1_scaled(x)
    assert out.shape == x.shape
    assert np.allclose(out, [bessel_k1_scaled(float(v)) for v in x], rtol=0, atol=0)


@pytest.mark.parametrize("f", [bessel_i0, bessel_i1, bessel_i0_scaled])
def test_domain_i(f):
    with pytest.raises(DomainError):
        f(-1.0)


@pytest.mark.parametrize("f", [bessel_k0, bessel_k1, bessel_k0_scaled, bessel_k1_scaled])
@pytest.mark.parametrize("x", [0.0, -2.0])
def test_domain_k(f, x):
    with pytest.raises(DomainError):
        f(x)


def test_evaluate_kernel():
    e = evaluate_kernel("k1", 3.0)
    assert e.value == pytest.approx(e.scaled_value * math.exp(-3.0), rel=1e-14)
    assert e.argument == 3.0
