"""Structural properties of complete permutations."""

from __future__ import annotations

import enum
from typing import NamedTuple

from .perm import Permutation

__all__ = ["PropertyKind", "Interval", "proper_intervals", "check_property"]


class PropertyKind(str, enum.Enum):
    SIMPLE = "simple"
    PLUS_DECOMPOSABLE = "plus_decomposable"
    MINUS_DECOMPOSABLE = "minus_decomposable"
    BLOCKWISE_SIMPLE = "blockwise_simple"
    DERANGEMENT = "derangement"
    NONDERANGEMENT = "nonderangement"
    INVOLUTION = "involution"
    PARITY = "parity"


class Interval(NamedTuple):
    """Positions start..end (inclusive) holding a contiguous set of values."""

    start: int
    end: int


def _intervals(values: tuple[int, ...]):
    """Yield every interval with start < end, including the full range."""
    n = len(values)
    for a in range(n):
        lo = hi = values[a]
        for b in range(a + 1, n):
            v = values[b]
            if v < lo:
                lo = v
            elif v > hi:
                hi = v
            if hi - lo == b - a:
                yield a, b


def proper_intervals(p: Permutation) -> list[Interval]:
    n = len(p)
    found = [Interval(a + 1, b + 1) for a, b in _intervals(p.images) if b - a + 1 < n]
    return sorted(found)


def _plus_decomposable(values) -> bool:
    n = len(values)
    prefix_max = 0
    for sep in range(1, n):
        prefix_max = max(prefix_max, values[sep - 1])
        # a prefix of length sep below everything after it must be exactly {1..sep}
        if prefix_max == sep:
            return True
    return False


def _minus_decomposable(values) -> bool:
    n = len(values)
    prefix_min = n + 1
    for sep in range(1, n):
        prefix_min = min(prefix_min, values[sep - 1])
        if prefix_min == n - sep + 1:
            return True
    return False


def _blockwise_simple(values) -> bool:
    # Every interval, the full range included, is tested at every split point,
    # single-point left blocks included.
    for a, b in _intervals(values):
        for mid in range(a, b):
            left = values[a : mid + 1]
            right = values[mid + 1 : b + 1]
            if max(left) < min(right) or min(left) > max(right):
                return False
    return True


def check_property(p: Permutation, kind: PropertyKind | str) -> bool:
    kind = PropertyKind(kind)
    values = p.images
    if kind is PropertyKind.SIMPLE:
        return not proper_intervals(p)
    if kind is PropertyKind.PLUS_DECOMPOSABLE:
        return _plus_decomposable(values)
    if kind is PropertyKind.MINUS_DECOMPOSABLE:
        return _minus_decomposable(values)
    if kind is PropertyKind.BLOCKWISE_SIMPLE:
        return _blockwise_simple(values)
    if kind is PropertyKind.DERANGEMENT:
        return all(v != i for i, v in enumerate(values, start=1))
    if kind is PropertyKind.NONDERANGEMENT:
        return any(v == i for i, v in enumerate(values, start=1))
    if kind is PropertyKind.INVOLUTION:
        return all(values[v - 1] == i for i, v in enumerate(values, start=1))
    if kind is PropertyKind.PARITY:
        return all((v - i) % 2 == 0 for i, v in enumerate(values, start=1))
    raise ValueError(f"unknown property {kind!r}")  # pragma: no cover
