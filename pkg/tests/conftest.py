import pytest

_CRITERIA: dict[int, tuple[bool, str, float]] = {}


@pytest.fixture
def criterion():
    """Record the outcome of one acceptance criterion: criterion(n, ok, detail, seconds)."""
    def record(n: int, ok: bool, detail: str, seconds: float) -> None:
        _CRITERIA[n] = (ok, detail, seconds)
        print(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} ({seconds:.1f}s) {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, detail, seconds = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} ({seconds:.1f}s) {detail}")
