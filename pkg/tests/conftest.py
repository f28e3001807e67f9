import numpy as np
import pytest
import scipy.linalg
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from tripartite_cv.gaussian import OMEGA, CovarianceMatrix

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ACCEPTANCE_LINES = []


def record(criterion: str, ok: bool, detail: str) -> None:
    """Log one acceptance verdict; printed in the terminal summary."""
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}")


@pytest.fixture
def acceptance():
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# --- random physical states -------------------------------------------------------

symmetric_generators = arrays(
    np.float64, (6, 6), elements=st.floats(-0.4, 0.4, allow_nan=False)
).map(lambda h: 0.5 * (h + h.T))

thermal_occupations = arrays(np.float64, (3,), elements=st.floats(1.0, 3.0))


def random_symplectic(h: np.ndarray) -> np.ndarray:
    # exp(Ω H) is symplectic for symmetric H
    return scipy.linalg.expm(OMEGA @ h)


@st.composite
def pure_states(draw):
    s = random_symplectic(draw(symmetric_generators))
    return CovarianceMatrix(s @ s.T)


@st.composite
def mixed_states(draw):
    s = random_symplectic(draw(symmetric_generators))
    nu = draw(thermal_occupations)
    return CovarianceMatrix(s @ np.diag(np.repeat(nu, 2)) @ s.T)


combinations = arrays(np.float64, (6,), elements=st.floats(-3, 3, allow_nan=False)).filter(
    lambda c: np.linalg.norm(c) > 1e-3
)
