import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_acceptance = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(number, title): acceptance criterion reported in the summary"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        number, title = mark.args
        ok = report.passed and not hasattr(report, "wasxfail")
        detail = dict(item.user_properties).get("detail", "")
        _acceptance[number] = (title, "PASS" if ok else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, verdict, detail = _acceptance[number]
        line = f"{verdict} criterion {number}: {title}"
        if detail:
            line += f" [{detail}]"
        terminalreporter.write_line(line)
