import pytest

_CRITERIA = []


@pytest.fixture
def criterion(request):
    """Call as ``criterion(number, title, ok, detail)``; one line per call lands in the summary."""

    def record(number, title, ok, detail=""):
        _CRITERIA.append((number, title, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(_CRITERIA, key=lambda c: c[0]):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {number}: {title}" + (f" ({detail})" if detail else ""))
