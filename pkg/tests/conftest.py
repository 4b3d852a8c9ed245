import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+?)(?:\[|$)")
_results: dict[int, dict] = {}


def pytest_runtest_logreport(report):
    match = _CRITERION.search(report.nodeid)
    if not match:
        return
    entry = _results.setdefault(int(match.group(1)), {"name": match.group(2), "ok": True, "detail": ""})
    if report.failed:
        entry["ok"] = False
    if report.when == "call":
        entry["detail"] = dict(report.user_properties).get("detail", entry["detail"])


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        entry = _results[number]
        status = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(f"{status} criterion {number:2d} {entry['name']}: {entry['detail']}")
