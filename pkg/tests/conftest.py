import time

import pytest

from zeta_audit.zerodb import bundled_zeros

CRITERION_LINES = []


@pytest.fixture(scope="session")
def table():
    return bundled_zeros()


class Criterion:
    """Collects every sub-check of one acceptance criterion, then reports once."""

    def __init__(self, number, title):
        self.number, self.title = number, title
        self.failures = []
        self.start = time.perf_counter()

    def check(self, ok, message):
        if not ok:
            self.failures.append(message)
        return ok

    def elapsed(self):
        return time.perf_counter() - self.start

    def finish(self, error=None):
        if error is not None:
            self.failures.append(f"{type(error).__name__}: {error}")
        status = "FAIL" if self.failures else "PASS"
        line = f"criterion {self.number:2d} {status}  {self.title} ({self.elapsed():.1f} s)"
        if self.failures:
            line += " -- " + "; ".join(self.failures)
        CRITERION_LINES.append(line)
        print(line)
        if self.failures and error is None:
            pytest.fail("; ".join(self.failures), pytrace=False)


@pytest.fixture
def criterion():
    made = []

    def make(number, title):
        made.append(Criterion(number, title))
        return made[-1]

    return make


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERION_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
