import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_")
_results = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    ok = not report.failed and (report.when != "call" or report.passed)
    _results[n] = _results.get(n, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        if n in _results:
            verdict = "PASS" if _results[n] else "FAIL"
            terminalreporter.write_line(f"criterion {n}: {verdict} ({CRITERIA[n]})")
