from __future__ import annotations

import os
import re

import pytest

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=300, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_CRITERIA: dict[int, str] = {}


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    """Remember the outcome of one acceptance criterion for the summary."""
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}"
    if detail:
        line += f"  ({detail})"
    _CRITERIA[number] = line
    print(line)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: one of the eleven acceptance criteria")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    """An acceptance test that errors before recording its outcome still counts as a failure."""
    outcome = yield
    report = outcome.get_result()
    m = re.match(r"test_criterion_(\d+)_", item.name)
    if m and report.when == "call" and report.failed:
        number = int(m.group(1))
        if number not in _CRITERIA or " PASS " in _CRITERIA[number]:
            reason = str(call.excinfo.value).splitlines()[0] if call.excinfo else "error"
            _CRITERIA[number] = f"criterion {number:>2}: FAIL  {item.name}  ({call.excinfo.typename}: {reason[:120]})"


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[number])
