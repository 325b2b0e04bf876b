import re

import pytest

from jordhecke.repdata import Registry, RepSymbol, SelfDualClass

_CRITERIA: dict[int, tuple[str, str]] = {}


@pytest.fixture
def two_reps() -> Registry:
    """One rep of each sign class, both of dimension 1."""
    return Registry([
        RepSymbol("p", 1, selfdual=SelfDualClass.PLUS),
        RepSymbol("m", 1, selfdual=SelfDualClass.MINUS),
    ])


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if m:
        _CRITERIA[int(m.group(1))] = (m.group(2), report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        name, outcome = _CRITERIA[n]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {n:>2} {verdict}  {name}")
