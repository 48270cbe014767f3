import os
import shutil

import pytest

from lzend.text import canonicalize

SAMPLE_TEXT = b"aacbbbbaababbabbba"

_acceptance_lines: list[str] = []


def record_acceptance(line: str) -> None:
    _acceptance_lines.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


def external_solver() -> str | None:
    cmd = os.environ.get("LZEND_SOLVER")
    if cmd:
        return cmd
    if shutil.which("rc2.py"):
        return "rc2.py -vv"
    return None


@pytest.fixture
def sample_text():
    return canonicalize(SAMPLE_TEXT)


@pytest.fixture
def solver():
    cmd = external_solver()
    if cmd is None:
        pytest.skip("no MaxSAT solver configured (set LZEND_SOLVER)")
    return cmd


@pytest.fixture
def rc2_inprocess():
    pytest.importorskip("pysat")
    from lzend.maxsat.rc2 import solve_wcnf

    return solve_wcnf
