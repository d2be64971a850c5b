"""Permutations of {1..n} in one-line notation, one-indexed throughout."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "NotABijection",
    "LengthMismatch",
    "Permutation",
    "PaddedView",
    "Occurrence",
    "new_permutation",
    "parse_permutation",
    "inverse",
    "order_isomorphic",
    "flatten",
]

# strictly increasing one-indexed positions i_1 < ... < i_k into a target
Occurrence = tuple[int, ...]


class NotABijection(ValueError):
    """Values are not exactly {1..n} for some n >= 1."""


class LengthMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if not images:
            raise NotABijection("empty permutation")
        n = len(images)
        seen = [False] * (n + 1)
        for v in images:
            if isinstance(v, bool) or not isinstance(v, int):
                raise NotABijection(f"non-integer value {v!r}")
            if not 1 <= v <= n:
                raise NotABijection(f"value {v} outside 1..{n}")
            if seen[v]:
                raise NotABijection(f"duplicate value {v}")
            seen[v] = True

    @property
    def n(self) -> int:
        return len(self.images)

    def __len__(self) -> int:
        return len(self.images)

    def __iter__(self) -> Iterator[int]:
        return iter(self.images)

    def __call__(self, i: int) -> int:
        """sigma(i) for 1 <= i <= n."""
        if not 1 <= i <= len(self.images):
            raise IndexError(f"position {i} outside 1..{len(self.images)}")
        return self.images[i - 1]

    def padded(self) -> PaddedView:
        return PaddedView(self)

    def __str__(self) -> str:
        return " ".join(map(str, self.images))

    def compact(self) -> str:
        """Digit-string form like ``521634`` (separated by spaces when n > 9)."""
        if len(self.images) <= 9:
            return "".join(map(str, self.images))
        return str(self)


class PaddedView:
    """Read-only view with sigma(0) = 0 and sigma(n+1) = n+1."""

    __slots__ = ("base", "_values")

    def __init__(self, base: Permutation):
        self.base = base
        self._values = (0, *base.images, len(base) + 1)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < len(self._values):
            raise IndexError(f"padded position {i} outside 0..{len(self._values) - 1}")
        return self._values[i]

    def __len__(self) -> int:
        return len(self._values)


def new_permutation(values: Iterable[int]) -> Permutation:
    return Permutation(tuple(values))


def parse_permutation(text: str) -> Permutation:
    """Parse ``"5 2 1 6 3 4"``; a bare digit string such as ``"521634"`` also works."""
    tokens = text.replace(",", " ").split()
    if len(tokens) == 1 and len(tokens[0]) > 1 and tokens[0].isdigit():
        tokens = list(tokens[0])
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise NotABijection(f"cannot parse permutation {text!r}") from exc
    return Permutation(tuple(values))


def inverse(p: Permutation) -> Permutation:
    q = [0] * len(p)
    for i, v in enumerate(p.images, start=1):
        q[v - 1] = i
    return Permutation(tuple(q))


def order_isomorphic(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        raise LengthMismatch(f"lengths differ: {len(a)} != {len(b)}")
    k = len(a)
    for i in range(k):
        for j in range(i + 1, k):
            if (a[i] < a[j]) != (b[i] < b[j]):
                return False
    return True


def flatten(values: Sequence[int]) -> Permutation:
    """The unique permutation order isomorphic to a list of distinct integers."""
    ranks = {v: r for r, v in enumerate(sorted(values), start=1)}
    if len(ranks) != len(values):
        raise ValueError("values must be distinct")
    return Permutation(tuple(ranks[v] for v in values))
