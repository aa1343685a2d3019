import contextlib

import pytest

_RESULTS = []


@pytest.fixture
def criterion():
    """Record a named acceptance criterion as PASS/FAIL for the terminal summary."""

    @contextlib.contextmanager
    def record(label):
        try:
            yield
        except BaseException:
            _RESULTS.append((label, False))
            raise
        _RESULTS.append((label, True))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok in _RESULTS:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {label}")
