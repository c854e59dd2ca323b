"""Shared fixtures and the acceptance-criterion summary section."""

from __future__ import annotations

import pytest

_LINES: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion.

    Returns the recorder; tests call it with (number, title, ok, detail)
    and then assert on the returned flag so a failure stays a failure.
    """

    def _record(num: int, title: str, ok: bool, detail: str) -> bool:
        mark = "PASS" if ok else "FAIL"
        _LINES[num] = f"criterion {num:2d} [{mark}] {title}: {detail}"
        return ok

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_LINES):
        terminalreporter.write_line(_LINES[num])
