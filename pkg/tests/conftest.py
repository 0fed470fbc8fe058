import pytest

_RESULTS = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(number, passed, detail)``."""

    def record(number, passed, detail=""):
        _RESULTS.append((number, request.node.name, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, passed, detail in sorted(_RESULTS, key=lambda r: r[0]):
        terminalreporter.write_line(
            "[%s] %2d %s  %s" % ("PASS" if passed else "FAIL", number, name, detail)
        )
