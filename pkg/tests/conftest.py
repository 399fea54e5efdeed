"""Per-criterion pass/fail summary for the acceptance suite."""

from collections import OrderedDict

_CRITERIA: "OrderedDict[int, str]" = OrderedDict()
_ITEMS: dict = {}
_FAILED: set = set()
_RAN: set = set()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion number and title")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            n, text = m.args
            _CRITERIA.setdefault(n, text)
            _ITEMS[item.nodeid] = n


def pytest_runtest_logreport(report):
    n = _ITEMS.get(report.nodeid)
    if n is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _RAN.add(n)
    if report.outcome == "failed" or (report.when == "call" and report.outcome == "skipped"):
        _FAILED.add(n)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        if n not in _RAN:
            continue
        verdict = "FAIL" if n in _FAILED else "PASS"
        terminalreporter.write_line(f"{verdict} criterion {n}: {_CRITERIA[n]}")
