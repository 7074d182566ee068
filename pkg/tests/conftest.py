"""Collects one pass/fail line per acceptance criterion and prints them after the run."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_RESULTS: dict[int, list[tuple[bool | None, str]]] = {}


@pytest.fixture
def criterion():
    """``criterion(number, passed, detail)`` records one measured part of an acceptance criterion.

    ``passed=None`` records an informational measurement that does not enter the decision.
    """

    def record(number: int, passed: bool | None, detail: str) -> bool:
        _RESULTS.setdefault(number, []).append((None if passed is None else bool(passed), detail))
        return True if passed is None else bool(passed)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        parts = _RESULTS[number]
        ok = all(p for p, _ in parts if p is not None)
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}")
        for passed, detail in parts:
            tag = "info" if passed is None else ("pass" if passed else "FAIL")
            terminalreporter.write_line(f"    [{tag}] {detail}")
