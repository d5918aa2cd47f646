import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from oplab.analytic import TaylorPolynomial

settings.register_profile(
    "oplab",
    deadline=None,
    max_examples=40,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("oplab")

coefficient = st.complex_numbers(max_magnitude=10.0, allow_nan=False, allow_infinity=False)


def polynomials(max_degree: int = 12, min_size: int = 1):
    return st.lists(coefficient, min_size=min_size, max_size=max_degree + 1).map(TaylorPolynomial)


disc_points = st.builds(
    lambda r, th: r * np.exp(1j * th),
    st.floats(0.0, 0.98),
    st.floats(0.0, 2 * np.pi),
)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
