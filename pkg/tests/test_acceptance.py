"""Acceptance criteria 1 to 10, one verify suite each.

Run directly (``python3 tests/test_acceptance.py``) for a plain pass/fail
listing, or through pytest, where the terminal summary prints the same lines.
"""

import sys

import pytest

from cambrian.verify import ASSERTED, CRITERION_SUITES, run_suite

from conftest import ACCEPTANCE_REPORTS


@pytest.mark.slow
@pytest.mark.parametrize("name", CRITERION_SUITES)
def test_criterion(name):
    report = run_suite(name)
    ACCEPTANCE_REPORTS[name] = report
    print(report.summary_line())
    failed = [c.render() for c in report.checks if c.kind == ASSERTED and not c.passed]
    assert report.within_budget, f"{name} took {report.seconds:.1f}s, budget {report.budget_seconds}s"
    assert not failed, "\n".join(failed)


if __name__ == "__main__":
    reports = [run_suite(name) for name in CRITERION_SUITES]
    for report in reports:
        print(report.summary_line())
    sys.exit(0 if all(r.passed for r in reports) else 1)
