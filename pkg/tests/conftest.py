from functools import lru_cache

import pytest

from degree3p.analysis import analyze_group
from degree3p.fixtures import BUILTINS
from degree3p.permcore import enumerate_group


@lru_cache(maxsize=None)
def group(name):
    return enumerate_group(BUILTINS[name].build())


@lru_cache(maxsize=None)
def report(name):
    return analyze_group(group(name), name)


@pytest.fixture
def analyzed():
    return report


@pytest.fixture
def built():
    return group


ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def acceptance():
    """Record one summary line per acceptance criterion."""

    def record(n: int, ok: bool, detail: str) -> None:
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES[n] = line
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
