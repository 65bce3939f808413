import numpy as np
import pytest

_ACCEPTANCE = {}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        detail = ""
        if report.failed and report.longrepr is not None:
            crash = getattr(report.longrepr, "reprcrash", None)
            detail = crash.message.splitlines()[0] if crash else ""
        _ACCEPTANCE[name] = (report.outcome.upper(), detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        outcome, detail = _ACCEPTANCE[name]
        label = name.replace("test_criterion_", "criterion ").replace("_", " ", 1)
        line = f"{'PASS' if outcome == 'PASSED' else 'FAIL'}  {label}"
        terminalreporter.write_line(line + (f"  -- {detail}" if detail else ""))
