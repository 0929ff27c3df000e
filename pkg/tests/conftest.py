from fractions import Fraction

import pytest

import pulsecal as pc

# Pass/fail lines recorded by the exit-criteria tests; echoed in the
# terminal summary so the verdicts are visible even under output capture.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


@pytest.fixture(scope="session")
def small_landscape():
    """Cheap calibrated landscape shared by read-only tests.

    Single-qubit, granularity 1/2 (27 references), one re-optimization
    round. Tests must not mutate it; anything running more rounds builds
    its own copy.
    """
    cfg = pc.CalibConfig(
        family="single-qubit", granularity=Fraction(1, 2), rounds=1, seed=7
    )
    return pc.calibrate(cfg)


@pytest.fixture(scope="session")
def chamber_initial():
    """Round-0 Weyl-chamber landscape at granularity 1/4 (14 references)."""
    cfg = pc.CalibConfig(
        family="weyl-chamber", granularity=Fraction(1, 4), rounds=0, seed=42
    )
    return pc.initial_round(cfg)
