"""Generate-and-test reference solver.

Walks all of S_n in lexicographic order and evaluates every constraint on
the finished permutation with the direct definitions from ``patterns``,
``properties`` and ``statistics``. Slow on purpose; the solver is tested
against it.
"""

from __future__ import annotations

from typing import Iterator

from .model import Model, PatternConstraint, PropertyConstraint, StatisticConstraint
from .patterns import Mode, contains
from .perm import Permutation
from .properties import check_property
from .solver import Solution, SolveOutcome
from .statistics import evaluate_predicate, statistic

__all__ = ["MAX_ORACLE_LENGTH", "LengthCapExceeded", "lexicographic_permutations", "satisfies", "brute_force_solve"]

MAX_ORACLE_LENGTH = 9


class LengthCapExceeded(ValueError):
    pass


def lexicographic_permutations(n: int) -> Iterator[tuple[int, ...]]:
    """S_n in lexicographic order via the next-permutation successor step."""
    a = list(range(1, n + 1))
    while True:
        yield tuple(a)
        i = n - 2
        while i >= 0 and a[i] > a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] < a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1 :] = reversed(a[i + 1 :])


def satisfies(p: Permutation, m: Model) -> bool:
    for c in m.constraints:
        if isinstance(c, PatternConstraint):
            if contains(p, c.pattern) != (c.mode is Mode.CONTAIN):
                return False
        elif isinstance(c, PropertyConstraint):
            if check_property(p, c.kind) == c.negate:
                return False
        elif isinstance(c, StatisticConstraint):
            if not evaluate_predicate(p, c.pred):
                return False
        else:  # pragma: no cover
            raise TypeError(f"unknown constraint {c!r}")
    return True


def brute_force_solve(m: Model, limit: int | None = None) -> SolveOutcome:
    if m.length > MAX_ORACLE_LENGTH:
        raise LengthCapExceeded(f"oracle handles lengths up to {MAX_ORACLE_LENGTH}, got {m.length}")
    solutions = []
    exhausted = True
    for images in lexicographic_permutations(m.length):
        p = Permutation(images)
        if satisfies(p, m):
            if limit is not None and len(solutions) == limit:
                exhausted = False
                break
            solutions.append(Solution(p, {s: statistic(p, s) for s in m.emit}))
    return SolveOutcome(count=len(solutions), solutions=solutions, exhausted=exhausted)
