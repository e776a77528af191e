import pytest


def pytest_configure(config):
    config.acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if config.acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in config.acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture
def record(request):
    """Log one PASS/FAIL line for an acceptance criterion."""

    def _record(number, title, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        line = f"criterion {number} [{status}] {title}" + (f": {detail}" if detail else "")
        request.config.acceptance_lines.append(line)
        print(line)
        return ok

    return _record
