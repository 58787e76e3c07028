import pytest

_LINES = {}
_DETAIL = {}


@pytest.fixture
def criterion(request):
    """Attach a measured-value summary to an acceptance test."""
    def note(text):
        _DETAIL[request.node.nodeid] = text
    return note


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _LINES[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in _LINES.items():
        name = nodeid.split("::")[-1]
        label = "PASS" if outcome == "passed" else "FAIL"
        detail = _DETAIL.get(nodeid, "")
        terminalreporter.write_line(f"{label}  {name}  {detail}".rstrip())
