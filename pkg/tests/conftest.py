import pytest

# filled by test_acceptance.py; one entry per criterion suite
ACCEPTANCE_REPORTS: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_REPORTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, report in sorted(ACCEPTANCE_REPORTS.items(), key=lambda kv: kv[1].criterion):
        terminalreporter.write_line(report.summary_line())


@pytest.fixture
def pp():
    from cambrian.perm_core import parse_permutation

    return parse_permutation
