import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from micromorphic_shell import BoundaryData, DimensionlessSet, ShellGeometry, from_dimensionless

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def setup(g: DimensionlessSet, r_o=1.0, U_o=1.0, mu_M=1.0, mu_c=0.0):
    """(params, geometry, boundary) for a dimensionless set."""
    p = from_dimensionless(g, mu_M=mu_M, r_o=r_o, mu_c=mu_c)
    return p, ShellGeometry(g.beta * r_o, r_o), BoundaryData(g.delta * U_o, U_o)


FIG2 = DimensionlessSet(g1=1.45, g2=5.0, g3=2.0, beta=0.15, lc_ratio=2.0, delta=0.0)


@st.composite
def admissible_sets(draw, lc_min=0.05, lc_max=200.0):
    g1 = draw(st.floats(1.05, 6.0))
    g3 = draw(st.floats(1.05, 6.0))
    g2 = max(g1, g3) * draw(st.floats(1.02, 3.0))
    beta = draw(st.floats(0.05, 0.95))
    lc = 10 ** draw(st.floats(np.log10(lc_min), np.log10(lc_max)))
    delta = draw(st.floats(-1.0, 1.0))
    return DimensionlessSet(g1, g2, g3, beta, lc, delta)


@pytest.fixture
def fig2():
    return setup(FIG2)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
