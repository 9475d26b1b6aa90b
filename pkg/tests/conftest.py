import pytest

from satiab.config import ScenarioConfig, build_scenario

# filled by tests/test_acceptance.py, reported after the run
ACCEPTANCE_RESULTS: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def default_scenario():
    """Default scenario: 600 km, N_p = 30, 30 dBm, R_min = 10 Mbit/s."""
    return build_scenario(ScenarioConfig())


@pytest.fixture
def high_orbit():
    """Higher orbit used for the minimum-rate studies: 1200 km, N_p = 30, 30 dBm."""
    return build_scenario(ScenarioConfig(altitude_km=1200.0))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, passed, detail = ACCEPTANCE_RESULTS[number]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{verdict}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
