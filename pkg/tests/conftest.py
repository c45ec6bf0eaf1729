from collections import defaultdict

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile("default")

# criterion number -> {"title": str, "results": [(case, passed)]}
_CRITERIA = defaultdict(lambda: {"title": "", "results": []})


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = tuple(marker.args)


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        number, title = marker
        entry = _CRITERIA[number]
        entry["title"] = title
        case = report.nodeid.split("::")[-1]
        entry["results"].append((case, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        results = entry["results"]
        failed = [case for case, ok in results if not ok]
        verdict = "FAIL" if failed else "PASS"
        line = (f"criterion {number:>2} {verdict}  {entry['title']}"
                f" ({len(results) - len(failed)}/{len(results)} cases)")
        if failed:
            line += "; failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
