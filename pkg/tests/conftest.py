import pytest

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(number, title): numbered exit criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.skipped):
        status = {"passed": "PASS", "failed": "FAIL",
                  "skipped": "SKIP"}[report.outcome]
        detail = getattr(item, "acceptance_detail", "")
        _ACCEPTANCE.append((marker.args[0], status, marker.args[1], detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, title, detail in sorted(_ACCEPTANCE):
        line = "[{}] criterion {:>2}: {}".format(status, number, title)
        if detail:
            line += " -- " + detail
        terminalreporter.write_line(line)
