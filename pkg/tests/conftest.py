import contextlib
import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Context manager recording one pass/fail line per acceptance criterion."""

    @contextlib.contextmanager
    def record(number, title):
        t0 = time.perf_counter()
        notes = []
        try:
            yield notes
        except BaseException as exc:
            _ACCEPTANCE.append((number, title, False, time.perf_counter() - t0,
                                notes + [f"{type(exc).__name__}: {exc}"[:300]]))
            raise
        _ACCEPTANCE.append((number, title, True, time.perf_counter() - t0, notes))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number, title, ok, secs, notes in sorted(_ACCEPTANCE, key=lambda r: int(r[0])):
        tr.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {title} ({secs:.1f}s)")
        for n in notes:
            tr.write_line(f"       {n}")
