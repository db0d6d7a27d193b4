"""Qualitative trends of the built-in parametric studies, read back from CLI output."""

import numpy as np
import pytest
from scipy.integrate import trapezoid

from micromorphic_shell.cli import main
from micromorphic_shell.datasets import read_csv
from micromorphic_shell.presets import FIGURES


@pytest.fixture(scope="module")
def figure_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("figures")

    def build(fig):
        out = root / str(fig)
        if not out.exists():
            assert main(["--mode", "figures", "--figure", str(fig), "-o", str(out)]) == 0
        preset = FIGURES[fig]
        return {v: read_csv(out / f"{preset.key}_{v:g}.csv") for v in preset.values}

    return build


def test_fig2_curve_order(figure_dir):
    cs = figure_dir(2)
    assert np.all(cs[1.45]["delta"][1:-1] > 0)
    assert np.all(cs[4.95]["delta"][1:-1] < 0)
    assert np.all(cs[1.45]["u_r_over_Uo"][1:-1] > cs[1.45]["u_r_classical_over_Uo"][1:-1])


def _integrated(cs):
    return max(trapezoid(np.abs(d["delta"]), d["r_over_ro"]) for d in cs.values())


def _peak(cs):
    return max(np.max(np.abs(d["delta"])) for d in cs.values())


def test_fig3_thin_shell_close_to_classical(figure_dir):
    # integrated deviation over the wall, thin vs thick shell
    assert _integrated(figure_dir(3)) <= 0.1 * _integrated(figure_dir(2))


@pytest.mark.xfail(strict=True, reason="pointwise peak ratio thin/thick is about 0.21, above the 0.1 proxy")
def test_fig3_pointwise_peak_proxy(figure_dir):
    assert _peak(figure_dir(3)) <= 0.1 * _peak(figure_dir(2))


def test_fig5_deviation_grows_with_g3(figure_dir):
    cs = figure_dir(5)
    peaks = [np.max(np.abs(cs[v]["delta"])) for v in FIGURES[5].values]
    assert peaks[0] < peaks[1] < peaks[2]


def test_fig6_inner_boundary_follows_ratio(figure_dir):
    cs = figure_dir(6)
    for v, d in cs.items():
        assert d["u_r_over_Uo"][0] == pytest.approx(v, abs=1e-10)
        assert d["u_r_over_Uo"][-1] == pytest.approx(1.0, abs=1e-10)


def test_figs_7_8_deviation_vanishes_at_boundaries(figure_dir):
    for fig in (7, 8):
        for d in figure_dir(fig).values():
            assert abs(d["delta"][0]) <= 1e-10 and abs(d["delta"][-1]) <= 1e-10
