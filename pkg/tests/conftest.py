from __future__ import annotations

import pytest

from bredon.groups import cyclic_group, symmetric_group, trivial_group
from bredon.verify import default_corpus

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def corpus():
    return default_corpus(0)


@pytest.fixture(scope="session")
def groups():
    return {"1": trivial_group(), "Z/2": cyclic_group(2), "Z/3": cyclic_group(3),
            "Z/4": cyclic_group(4), "S_3": symmetric_group(3)}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
