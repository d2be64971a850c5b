"""Classic, vincular, bivincular, mesh, boxed mesh and consecutive patterns.

Every variant is decided by its own occurrence condition here. ``to_mesh``
gives the equivalent mesh pattern; the solver works from that form, so the
two routes check each other.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .perm import LengthMismatch, Occurrence, Permutation, order_isomorphic

__all__ = [
    "KINDS",
    "Mode",
    "InvalidPattern",
    "IndexOutOfRange",
    "PatternSpec",
    "classic",
    "vincular",
    "bivincular",
    "mesh",
    "boxed",
    "consecutive",
    "classic_match_at",
    "iter_classic_occurrences",
    "find_occurrences",
    "contains",
    "avoids",
    "to_mesh",
]

KINDS = ("classic", "vincular", "bivincular", "mesh", "boxed", "consecutive")


class Mode(str, enum.Enum):
    CONTAIN = "contain"
    AVOID = "avoid"


class InvalidPattern(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class PatternSpec:
    """A pattern variant over a base permutation of length k.

    ``adjacencies`` are index adjacencies (vincular, bivincular),
    ``value_adjacencies`` value adjacencies (bivincular) and ``regions`` the
    shaded unit cells (x, y) of a mesh pattern, all within 0..k.
    """

    kind: str
    base: Permutation
    adjacencies: frozenset[int] = field(default_factory=frozenset)
    value_adjacencies: frozenset[int] = field(default_factory=frozenset)
    regions: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidPattern(f"unknown pattern kind {self.kind!r}")
        if not isinstance(self.base, Permutation):
            object.__setattr__(self, "base", Permutation(tuple(self.base)))
        object.__setattr__(self, "adjacencies", frozenset(self.adjacencies))
        object.__setattr__(self, "value_adjacencies", frozenset(self.value_adjacencies))
        object.__setattr__(
            self, "regions", frozenset((int(x), int(y)) for x, y in self.regions)
        )
        k = len(self.base)
        allowed = {
            "classic": (),
            "boxed": (),
            "consecutive": (),
            "vincular": ("adjacencies",),
            "bivincular": ("adjacencies", "value_adjacencies"),
            "mesh": ("regions",),
        }[self.kind]
        for name in ("adjacencies", "value_adjacencies", "regions"):
            if getattr(self, name) and name not in allowed:
                raise InvalidPattern(f"{self.kind} pattern takes no {name}")
        for name in ("adjacencies", "value_adjacencies"):
            for a in getattr(self, name):
                if not 0 <= a <= k:
                    raise InvalidPattern(f"{name} entry {a} outside 0..{k}")
        for x, y in self.regions:
            if not (0 <= x <= k and 0 <= y <= k):
                raise InvalidPattern(f"region ({x},{y}) outside [0,{k}]x[0,{k}]")

    @property
    def k(self) -> int:
        return len(self.base)

    def describe(self) -> str:
        base = self.base.compact()
        if self.kind == "vincular":
            return f"vincular ({base}, {_fmt_set(self.adjacencies)})"
        if self.kind == "bivincular":
            return (
                f"bivincular ({base}, {_fmt_set(self.adjacencies)}, "
                f"{_fmt_set(self.value_adjacencies)})"
            )
        if self.kind == "mesh":
            cells = ",".join(f"({x},{y})" for x, y in sorted(self.regions))
            return f"mesh ({base}, {{{cells}}})"
        return f"{self.kind} {base}"


def _fmt_set(s: Iterable[int]) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


def classic(base) -> PatternSpec:
    return PatternSpec("classic", _perm(base))


def vincular(base, adjacencies: Iterable[int]) -> PatternSpec:
    return PatternSpec("vincular", _perm(base), adjacencies=frozenset(adjacencies))


def bivincular(base, adjacencies: Iterable[int], value_adjacencies: Iterable[int]) -> PatternSpec:
    return PatternSpec(
        "bivincular",
        _perm(base),
        adjacencies=frozenset(adjacencies),
        value_adjacencies=frozenset(value_adjacencies),
    )


def mesh(base, regions: Iterable[tuple[int, int]]) -> PatternSpec:
    return PatternSpec("mesh", _perm(base), regions=frozenset(map(tuple, regions)))


def boxed(base) -> PatternSpec:
    return PatternSpec("boxed", _perm(base))


def consecutive(base) -> PatternSpec:
    return PatternSpec("consecutive", _perm(base))


def _perm(base) -> Permutation:
    if isinstance(base, Permutation):
        return base
    if isinstance(base, str):
        return Permutation(tuple(int(c) for c in base))
    return Permutation(tuple(base))


def _neighbour_slots(base: Sequence[int]) -> tuple[list[int], list[int]]:
    """For each slot j, the earlier slot holding the closest smaller / larger value (-1 if none)."""
    lower, upper = [], []
    for j, v in enumerate(base):
        lo = hi = -1
        for t in range(j):
            w = base[t]
            if w < v and (lo < 0 or w > base[lo]):
                lo = t
            if w > v and (hi < 0 or w < base[hi]):
                hi = t
        lower.append(lo)
        upper.append(hi)
    return lower, upper


def iter_classic_occurrences(target: Permutation, base: Permutation) -> Iterator[Occurrence]:
    """All order-isomorphic occurrences of ``base`` in ``target``, lexicographically."""
    values = target.images
    pat = base.images
    n, k = len(values), len(pat)
    if k > n:
        return
    lower, upper = _neighbour_slots(pat)
    chosen = [0] * k

    def rec(j: int, start: int) -> Iterator[Occurrence]:
        if j == k:
            yield tuple(c + 1 for c in chosen)
            return
        lo, hi = lower[j], upper[j]
        for i in range(start, n - (k - j) + 1):
            v = values[i]
            if lo >= 0 and v < values[chosen[lo]]:
                continue
            if hi >= 0 and v > values[chosen[hi]]:
                continue
            chosen[j] = i
            yield from rec(j + 1, i + 1)

    yield from rec(0, 0)


def classic_match_at(target: Permutation, base: Permutation, occ: Sequence[int]) -> bool:
    if len(occ) != len(base):
        raise LengthMismatch(f"occurrence has {len(occ)} indices, pattern has {len(base)}")
    n = len(target)
    prev = 0
    for i in occ:
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"index {i} outside 1..{n}")
        if i <= prev:
            raise IndexOutOfRange(f"indices not strictly increasing: {tuple(occ)}")
        prev = i
    return order_isomorphic([target(i) for i in occ], base.images)


def _index_adjacent(occ: Occurrence, n: int, adjacencies: Iterable[int]) -> bool:
    idx = (0, *occ, n + 1)
    return all(idx[a + 1] == idx[a] + 1 for a in adjacencies)


def _value_adjacent(target: Permutation, occ: Occurrence, value_adjacencies: Iterable[int]) -> bool:
    n = len(target)
    j = (0, *sorted(target.images[i - 1] for i in occ), n + 1)
    return all(j[b + 1] == j[b] + 1 for b in value_adjacencies)


def _mesh_empty(target: Permutation, base: Permutation, occ: Occurrence, regions) -> bool:
    # Strict bounds. Non-strict bounds would agree: values are distinct and
    # the padded points at 0 and n+1 never sit strictly between two occurrence indices.
    k = len(base)
    padded = (0, *target.images, len(target) + 1)
    idx = (0, *occ, len(target) + 1)
    pinv = [0] * (k + 2)
    pinv[k + 1] = k + 1
    for i, v in enumerate(base.images, start=1):
        pinv[v] = i
    for x, y in regions:
        lo = padded[idx[pinv[y]]]
        hi = padded[idx[pinv[y + 1]]]
        for z in range(idx[x] + 1, idx[x + 1]):
            if lo < padded[z] < hi:
                return False
    return True


def _box_empty(target: Permutation, occ: Occurrence) -> bool:
    values = target.images
    occ_values = [values[i - 1] for i in occ]
    lo, hi = min(occ_values), max(occ_values)
    members = set(occ)
    for z in range(occ[0] + 1, occ[-1]):
        if z not in members and lo < values[z - 1] < hi:
            return False
    return True


def _satisfies(target: Permutation, pattern: PatternSpec, occ: Occurrence) -> bool:
    """Variant-specific conditions on top of order isomorphism."""
    kind = pattern.kind
    if kind == "classic":
        return True
    if kind == "vincular":
        return _index_adjacent(occ, len(target), pattern.adjacencies)
    if kind == "bivincular":
        return _index_adjacent(occ, len(target), pattern.adjacencies) and _value_adjacent(
            target, occ, pattern.value_adjacencies
        )
    if kind == "mesh":
        return _mesh_empty(target, pattern.base, occ, pattern.regions)
    if kind == "boxed":
        return _box_empty(target, occ)
    if kind == "consecutive":
        return occ[-1] - occ[0] == len(occ) - 1
    raise InvalidPattern(kind)


def _iter_occurrences(target: Permutation, pattern: PatternSpec) -> Iterator[Occurrence]:
    k, n = pattern.k, len(target)
    if k > n:
        return
    if pattern.kind == "consecutive":
        base = pattern.base.images
        for start in range(1, n - k + 2):
            occ = tuple(range(start, start + k))
            if order_isomorphic([target.images[i - 1] for i in occ], base):
                yield occ
        return
    for occ in iter_classic_occurrences(target, pattern.base):
        if _satisfies(target, pattern, occ):
            yield occ


def find_occurrences(target: Permutation, pattern: PatternSpec) -> list[Occurrence]:
    return list(_iter_occurrences(target, pattern))


def contains(target: Permutation, pattern: PatternSpec) -> bool:
    for _ in _iter_occurrences(target, pattern):
        return True
    return False


def avoids(target: Permutation, pattern: PatternSpec) -> bool:
    return not contains(target, pattern)


def to_mesh(pattern: PatternSpec) -> PatternSpec:
    """Equivalent mesh pattern: adjacencies become fully shaded columns / rows."""
    k = pattern.k
    kind = pattern.kind
    if kind == "mesh":
        return pattern
    if kind == "classic":
        cells: set[tuple[int, int]] = set()
    elif kind == "boxed":
        cells = {(x, y) for x in range(1, k) for y in range(1, k)}
    else:
        if kind == "consecutive":
            cols, rows = set(range(1, k)), set()
        else:
            cols, rows = set(pattern.adjacencies), set(pattern.value_adjacencies)
        cells = {(a, y) for a in cols for y in range(k + 1)}
        cells |= {(x, b) for b in rows for x in range(k + 1)}
    return PatternSpec("mesh", pattern.base, regions=frozenset(cells))
