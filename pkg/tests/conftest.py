from __future__ import annotations

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

import pytest

_CRITERIA: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion for the terminal summary."""

    def record(number: int, title: str, ok: bool, seconds: float, limit: float | None, detail: str = "") -> None:
        timing = f"{seconds:.2f}s" + (f" (limit {limit:g}s)" if limit is not None else "")
        line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {timing}"
        _CRITERIA[number] = line + (f"; {detail}" if detail else "")
        print(_CRITERIA[number])

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[n])
