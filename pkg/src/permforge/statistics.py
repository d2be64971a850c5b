"""Permutation statistics and linear predicates over them."""

from __future__ import annotations

import enum
import operator
from dataclasses import dataclass
from typing import Iterable

from .perm import Permutation

__all__ = [
    "StatisticKind",
    "Comparator",
    "MalformedPredicate",
    "StatisticPredicate",
    "statistic",
    "all_statistics",
    "evaluate_predicate",
    "predicate_value",
]


class StatisticKind(str, enum.Enum):
    INVERSIONS = "inversions"
    DESCENTS = "descents"
    ASCENTS = "ascents"
    EXCEDANCES = "excedances"
    MAJOR_INDEX = "major_index"


class Comparator(str, enum.Enum):
    EQ = "eq"
    NE = "ne"
    LT = "lt"
    LE = "le"
    GT = "gt"
    GE = "ge"

    def apply(self, lhs: int, rhs: int) -> bool:
        return _OPS[self](lhs, rhs)


_OPS = {
    Comparator.EQ: operator.eq,
    Comparator.NE: operator.ne,
    Comparator.LT: operator.lt,
    Comparator.LE: operator.le,
    Comparator.GT: operator.gt,
    Comparator.GE: operator.ge,
}


class MalformedPredicate(ValueError):
    pass


@dataclass(frozen=True)
class StatisticPredicate:
    """``sum(coef * stat) <op> rhs``, or ``(sum mod modulus) <op> rhs`` when a modulus is set.

    Python integers are unbounded, so the weighted sum never overflows.
    """

    terms: tuple[tuple[int, StatisticKind], ...]
    comparator: Comparator
    rhs: int
    modulus: int | None = None

    def __post_init__(self):
        try:
            terms = tuple((int(c), StatisticKind(s)) for c, s in self.terms)
            comparator = Comparator(self.comparator)
        except (TypeError, ValueError) as exc:
            raise MalformedPredicate(str(exc)) from exc
        if not terms:
            raise MalformedPredicate("predicate needs at least one term")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "comparator", comparator)
        if self.modulus is not None:
            if self.modulus < 2:
                raise MalformedPredicate(f"modulus must be >= 2, got {self.modulus}")
            if comparator not in (Comparator.EQ, Comparator.NE):
                raise MalformedPredicate("a modulus only combines with eq or ne")

    @classmethod
    def single(cls, stat, comparator, rhs: int, modulus: int | None = None) -> StatisticPredicate:
        return cls(((1, StatisticKind(stat)),), Comparator(comparator), rhs, modulus)


def _inversions(values) -> int:
    n = len(values)
    return sum(1 for i in range(n) for j in range(i + 1, n) if values[i] > values[j])


def statistic(p: Permutation, kind: StatisticKind | str) -> int:
    kind = StatisticKind(kind)
    values = p.images
    n = len(values)
    if kind is StatisticKind.INVERSIONS:
        return _inversions(values)
    if kind is StatisticKind.DESCENTS:
        return sum(1 for i in range(n - 1) if values[i] > values[i + 1])
    if kind is StatisticKind.ASCENTS:
        return sum(1 for i in range(n - 1) if values[i] < values[i + 1])
    if kind is StatisticKind.EXCEDANCES:
        return sum(1 for i, v in enumerate(values, start=1) if v > i)
    if kind is StatisticKind.MAJOR_INDEX:
        return sum(i for i in range(1, n) if values[i - 1] > values[i])
    raise ValueError(f"unknown statistic {kind!r}")  # pragma: no cover


def all_statistics(p: Permutation, kinds: Iterable[StatisticKind | str] = StatisticKind) -> dict[StatisticKind, int]:
    return {StatisticKind(k): statistic(p, k) for k in kinds}


def predicate_value(p: Permutation, pred: StatisticPredicate) -> int:
    return sum(c * statistic(p, s) for c, s in pred.terms)


def evaluate_predicate(p: Permutation, pred: StatisticPredicate) -> bool:
    value = predicate_value(p, pred)
    if pred.modulus is not None:
        value %= pred.modulus  # Python's % already yields the nonnegative residue
    return pred.comparator.apply(value, pred.rhs)
