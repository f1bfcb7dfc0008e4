import numpy as np
import pytest

from fermitangle.amplitude import T_CHANNEL, ScatterParams, amplitude_callback
from fermitangle.schmidt import schmidt_from_amplitude
from fermitangle.specfun import gauss_hermite_rule

REFERENCE_TIMES = (1.0, 2.0, 3.0, 4.0)

# criterion id -> (passed, detail); filled by test_acceptance
ACCEPTANCE_REPORT = {}


@pytest.fixture(scope="session")
def params():
    return ScatterParams()


@pytest.fixture(scope="session")
def rule64():
    return gauss_hermite_rule(64)


@pytest.fixture(scope="session")
def t_decs(params, rule64):
    """Up-down t-channel decompositions at the four reference times (12 x 12, 64-point rule)."""
    return {
        t: schmidt_from_amplitude(amplitude_callback(T_CHANNEL, t, params), 12, rule64, t)
        for t in REFERENCE_TIMES
    }


@pytest.fixture
def rng():
    return np.random.default_rng(20061015)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_REPORT, key=lambda k: (int(k.split(".")[0]), k)):
        ok, detail = ACCEPTANCE_REPORT[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  C{key}: {detail}")
