"""One PASS/FAIL line per acceptance criterion."""

import time
from contextlib import contextmanager

LINES: dict[int, str] = {}


@contextmanager
def criterion(n: int, title: str, limit: float | None = None):
    """Time a criterion, check its runtime limit and record the outcome."""
    notes: list[str] = []
    t0 = time.perf_counter()
    try:
        yield notes
        elapsed = time.perf_counter() - t0
        if limit is not None:
            assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit:.0f}s"
    except BaseException as exc:
        elapsed = time.perf_counter() - t0
        msg = f"{type(exc).__name__}: {exc}".splitlines()[0][:160]
        _record(n, False, title, elapsed, notes + [msg])
        raise
    _record(n, True, title, elapsed, notes)


def _record(n, ok, title, elapsed, notes):
    line = f"[{n:2d}] {'PASS' if ok else 'FAIL'} {title} ({elapsed:.2f}s)"
    if notes:
        line += " - " + "; ".join(notes)
    LINES[n] = line
    print(line)
