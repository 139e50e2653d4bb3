import pytest

ACCEPTANCE: dict = {}


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line for the acceptance criterion a test covers."""
    key = request.node.name

    def record(label: str, ok: bool):
        ACCEPTANCE[key] = (label, ok)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        label, ok = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}")
