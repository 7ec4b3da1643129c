import contextlib

import pytest

_ACCEPTANCE: list[tuple[str, str, bool, str]] = []


@pytest.fixture
def criterion():
    """Record the outcome of one acceptance criterion for the end-of-run summary."""

    @contextlib.contextmanager
    def record(number: int, title: str):
        try:
            yield
        except BaseException as exc:
            _ACCEPTANCE.append((f"AC{number:02d}", title, False, str(exc).splitlines()[0] if str(exc) else ""))
            raise
        _ACCEPTANCE.append((f"AC{number:02d}", title, True, ""))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for tag, title, ok, detail in sorted(_ACCEPTANCE):
        line = f"{'PASS' if ok else 'FAIL'} {tag} {title}"
        terminalreporter.write_line(line + (f" -- {detail}" if detail else ""))
