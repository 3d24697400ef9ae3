import time
from contextlib import contextmanager

import pytest

_LINES: list[str] = []


class Criterion:
    """Times one acceptance criterion and records a PASS/FAIL line for the summary."""

    def __init__(self, number: int, title: str, budget: float):
        self.number, self.title, self.budget = number, title, budget
        self.elapsed = 0.0

    @contextmanager
    def timed(self):
        start = time.perf_counter()
        try:
            yield
        finally:
            self.elapsed += time.perf_counter() - start

    def record(self, ok: bool, detail: str = "") -> None:
        status = "PASS" if ok else "FAIL"
        extra = f" ({detail})" if detail else ""
        _LINES.append(
            f"[{status}] criterion {self.number:>2}: {self.title}{extra} "
            f"[{self.elapsed:.2f}s / budget {self.budget:g}s]"
        )

    def check_budget(self) -> None:
        assert self.elapsed < self.budget, f"took {self.elapsed:.2f}s, budget {self.budget}s"


@pytest.fixture
def criterion():
    def make(number: int, title: str, budget: float) -> Criterion:
        return Criterion(number, title, budget)

    return make


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_LINES, key=lambda text: int(text.split("criterion")[1].split(":")[0])):
        terminalreporter.write_line(line)
