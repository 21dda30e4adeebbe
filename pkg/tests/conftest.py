import pytest

ACCEPTANCE: dict[int, tuple[str, str, float]] = {}


def pytest_runtest_makereport(item, call):
    num = getattr(item.function, "criterion", None)
    if num is None or call.when != "call":
        return
    outcome = "PASS" if call.excinfo is None else "FAIL"
    ACCEPTANCE[num] = (item.function.criterion_title, outcome, call.duration)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, outcome, secs = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d} {outcome}  {title} ({secs:.2f}s)")


@pytest.fixture
def timed():
    """Assert a wall-clock limit on the body of a test."""
    import time

    class Timer:
        def __init__(self):
            self.start = time.perf_counter()

        def check(self, limit: float):
            elapsed = time.perf_counter() - self.start
            assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"

    return Timer()
