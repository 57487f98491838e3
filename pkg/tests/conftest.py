import pytest

from degbwt import search


@pytest.fixture(autouse=True)
def _interval_checks(monkeypatch):
    """Every search run by the tests asserts the interval-set invariants."""
    monkeypatch.setattr(search, "DEBUG_CHECKS", True)


def pytest_configure(config):
    config._acceptance_lines = []


@pytest.fixture
def report(request):
    """Record one acceptance line: report(criterion, passed, detail)."""

    def _report(criterion, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        request.config._acceptance_lines.append(f"[{status}] {criterion}: {detail}")

    return _report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
