import pytest

VERDICTS: dict[int, str] = {}


@pytest.fixture
def criterion():
    """``criterion(n, text, ok, detail)`` records one verdict line and asserts ``ok``."""
    def check(n: int, text: str, ok: bool, detail: str = "") -> None:
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {text}"
        if detail:
            line += f" [{detail}]"
        VERDICTS[n] = line
        print(line)
        assert ok, line
    return check


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[n])
