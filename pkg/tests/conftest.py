import pytest

_LINES = pytest.StashKey[list]()


@pytest.fixture
def report(request):
    """Record one acceptance line; all lines are echoed in the terminal summary."""
    lines = request.config.stash.setdefault(_LINES, [])

    def _report(number: int, title: str, ok: bool, detail: str) -> None:
        lines.append(f"criterion {number} {title}: {'PASS' if ok else 'FAIL'} ({detail})")

    return _report


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
