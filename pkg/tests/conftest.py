from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

_criteria = []


@pytest.fixture(scope="session")
def sample_rows():
    """Published sample of GF(7^7) codes, 11 per row as printed."""
    text = (DATA / "gf7_7_sample.txt").read_text()
    return [[int(x) for x in line.split()] for line in text.splitlines() if line.strip()]


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _criteria.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _criteria:
        mark = "PASS" if outcome == "passed" else outcome.upper()
        terminalreporter.write_line(f"[{mark}] {name}")
