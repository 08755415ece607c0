from __future__ import annotations

import pytest

from builders import UNIT
from fpnfr.model import WeightProfile


@pytest.fixture
def unit_profile() -> WeightProfile:
    return UNIT


# --- acceptance summary ------------------------------------------------------

_acceptance: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n, title): exit criterion reported in the summary")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None or call.when != "call":
        return
    n, title = marker.args
    outcome = "PASS" if call.excinfo is None else "FAIL"
    previous = _acceptance.get(n, ("PASS", title))[0]
    _acceptance[n] = ("FAIL" if "FAIL" in (previous, outcome) else "PASS", title)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_acceptance, key=int):
        outcome, title = _acceptance[n]
        terminalreporter.write_line(f"AC{n:>2} {outcome}  {title}")
