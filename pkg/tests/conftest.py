import pytest

_results: list[tuple[str, bool, str]] = []


@pytest.fixture
def record():
    """Log one acceptance line; the test still asserts on its own."""
    def _record(label: str, passed: bool, detail: str):
        _results.append((label, passed, detail))
        print(f"{'PASS' if passed else 'FAIL'} {label}: {detail}")
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in sorted(_results):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} {label}: {detail}")
