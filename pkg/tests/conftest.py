import re

_outcomes: dict[int, bool] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.when == "call" or report.failed:
        _outcomes[n] = _outcomes.get(n, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        status = "PASS" if _outcomes[n] else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {status} - {CRITERIA[n]}")
