"""Shared pytest configuration.

The acceptance suite (test_acceptance.py) maps one test per acceptance
criterion; a terminal-summary hook prints one pass/fail line per
criterion after the run.
"""

import re

CRITERION_PATTERN = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")

_outcomes: dict[int, str] = {}


def pytest_runtest_logreport(report):
    match = CRITERION_PATTERN.search(report.nodeid)
    if match and report.when == "call":
        _outcomes[int(match.group(1))] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_outcomes):
        verdict = "PASS" if _outcomes[num] == "passed" else "FAIL"
        terminalreporter.write_line(f"CRITERION {num}: {verdict}")
