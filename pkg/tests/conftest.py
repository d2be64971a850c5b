import itertools
import sys

import pytest

from permforge import Permutation


def all_perms(n):
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


@pytest.fixture(scope="session")
def perms_upto_6():
    return [p for n in range(1, 7) for p in all_perms(n)]


@pytest.fixture(scope="session")
def perms_by_length():
    return {n: all_perms(n) for n in range(1, 9)}


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
