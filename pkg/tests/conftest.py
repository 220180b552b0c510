"""Shared pytest plumbing: the acceptance-criterion report.

Acceptance tests record one line per criterion through the ``criterion``
fixture; the lines are echoed immediately (visible under ``-s``) and again in
a terminal summary section, so a plain ``pytest -v`` run always shows one
pass/fail line per criterion.
"""

import pytest

_CRITERION_LINES = []


@pytest.fixture(scope="session")
def criterion():
    def record(number, label, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] criterion {number}: {label}"
        if detail:
            line += f" ({detail})"
        _CRITERION_LINES.append(line)
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERION_LINES):
            terminalreporter.write_line(line)
