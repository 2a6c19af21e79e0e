import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from _report import ACCEPTANCE_LINES  # noqa: E402
from hatguess.core import Graph  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, detail in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}")


def _g(vertices, edges):
    return Graph(list(vertices), [tuple(e) for e in edges])


@pytest.fixture
def bowtie():
    return _g("abcde", ["ab", "bc", "ac", "cd", "de", "ce"])


@pytest.fixture
def seven():
    return _g("abcdefg", ["ab", "bc", "ac", "cd", "de", "ef", "fg", "eg"])


def graph_from(vertices, edges):
    return _g(vertices, edges)
