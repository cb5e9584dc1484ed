import contextlib
import time

import pytest

_CRITERIA: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance criterion as a PASS/FAIL line; re-raises on failure."""

    @contextlib.contextmanager
    def run(number, title, limit=None):
        start = time.monotonic()
        try:
            yield
            elapsed = time.monotonic() - start
            if limit is not None:
                assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
        except BaseException:
            line = f"[FAIL] criterion {number}: {title}"
            _CRITERIA.append(line)
            print(line)
            raise
        line = f"[PASS] criterion {number}: {title} ({elapsed:.3f}s)"
        _CRITERIA.append(line)
        print(line)

    return run


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
