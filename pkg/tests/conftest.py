"""Collects acceptance-criterion outcomes and prints one line for each."""

import re

_criteria: dict[int, dict] = {}
_NODE = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    m = _NODE.search(report.nodeid)
    if m is None:
        return
    entry = _criteria.setdefault(int(m.group(1)), {"name": m.group(2).replace("_", " "), "ok": True, "detail": ""})
    if report.failed:
        entry["ok"] = False
    detail = dict(report.user_properties).get("detail")
    if detail:
        entry["detail"] = detail


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        line = f"[{'PASS' if entry['ok'] else 'FAIL'}] criterion {number}: {entry['name']}"
        if entry["detail"]:
            line += f"  ({entry['detail']})"
        terminalreporter.write_line(line)
