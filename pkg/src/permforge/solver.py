"""Backtracking enumeration of the permutations satisfying a Model.

Positions are filled left to right with values tried in ascending order, so
solutions come out in lexicographic order. A prefix is cut only when no
completion of it can satisfy the model:

* avoidance of a pattern whose mesh form shades nothing in its last column
  (classic, consecutive, boxed, most vincular and mesh patterns): the points
  that could fall into a shaded cell of an occurrence inside the prefix are
  already fixed, so the occurrence survives every completion;
* involution, derangement and parity, position by position;
* statistic predicates without a modulus, from lower/upper bounds on each
  statistic given the prefix.

Everything else is decided at the leaves. Work is split into the feasible
prefixes of a fixed depth; subtrees are solved independently (optionally in
worker processes) and merged in prefix order, which keeps the output
identical for any worker count or split depth.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

from .model import Model, PatternConstraint, PropertyConstraint, StatisticConstraint
from .patterns import Mode, PatternSpec, to_mesh
from .perm import Permutation
from .properties import PropertyKind, check_property
from .statistics import Comparator, StatisticKind, StatisticPredicate

__all__ = [
    "ResourceLimitExceeded",
    "SolveConfig",
    "Solution",
    "SolveOutcome",
    "PartialAssignment",
    "solve",
    "prefix_feasible",
    "split_work",
]

log = logging.getLogger(__name__)

_STAT_ORDER = (
    StatisticKind.INVERSIONS,
    StatisticKind.DESCENTS,
    StatisticKind.ASCENTS,
    StatisticKind.EXCEDANCES,
    StatisticKind.MAJOR_INDEX,
)
_STAT_SLOT = {s: i for i, s in enumerate(_STAT_ORDER)}


class ResourceLimitExceeded(RuntimeError):
    def __init__(self, nodes: int, node_limit: int):
        super().__init__(f"search visited {nodes} nodes, budget was {node_limit}")
        self.nodes = nodes
        self.node_limit = node_limit

    def __reduce__(self):  # survive the trip back from a worker process
        return type(self), (self.nodes, self.node_limit)


@dataclass(frozen=True)
class SolveConfig:
    workers: int = 1
    split_depth: int = 2
    limit: int | None = None
    mode: str = "enumerate"
    prune: bool = True
    node_limit: int | None = None

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.split_depth < 0:
            raise ValueError("split_depth must be >= 0")
        if self.limit is not None and self.limit < 1:
            raise ValueError("limit must be >= 1")
        if self.mode not in ("count", "enumerate"):
            raise ValueError(f"mode must be 'count' or 'enumerate', got {self.mode!r}")
        if self.node_limit is not None and self.node_limit < 1:
            raise ValueError("node_limit must be >= 1")


class Solution(NamedTuple):
    perm: Permutation
    stats: dict[StatisticKind, int]


@dataclass
class SolveOutcome:
    count: int
    solutions: list[Solution] = field(default_factory=list)
    exhausted: bool = True
    nodes: int = 0


@dataclass(frozen=True)
class PartialAssignment:
    """Values for positions 1..m of a length-n permutation."""

    prefix: tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        if len(self.prefix) > self.n:
            raise ValueError("prefix longer than the permutation")
        if len(set(self.prefix)) != len(self.prefix):
            raise ValueError("prefix values must be distinct")
        if any(not 1 <= v <= self.n for v in self.prefix):
            raise ValueError(f"prefix values must lie in 1..{self.n}")

    @property
    def used(self) -> frozenset[int]:
        return frozenset(self.prefix)


# -- compiled matchers -----------------------------------------------------------


class _MeshMatcher:
    """Occurrence search for a mesh pattern over a 0-indexed value list."""

    def __init__(self, pattern: PatternSpec):
        m = to_mesh(pattern)
        base = m.base.images
        k = len(base)
        self.k = k
        self.base = base
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
        self.lower = lower
        self.upper = upper
        # slot holding pattern value y; -1 stands for the padded 0, k for the padded n+1
        slot_of = {0: -1, k + 1: k}
        for i, v in enumerate(base):
            slot_of[v] = i
        self.cells = tuple(sorted((x, slot_of[y], slot_of[y + 1]) for x, y in m.regions))
        self.prefix_monotone = all(x < k for x, _, _ in self.cells)
        self.below_last = tuple(base[j] < base[-1] for j in range(k))

    def _regions_empty(self, vals, n: int, chosen) -> bool:
        for x, lo_slot, hi_slot in self.cells:
            lo = 0 if lo_slot < 0 else vals[chosen[lo_slot]]
            hi = n + 1 if hi_slot >= self.k else vals[chosen[hi_slot]]
            start = chosen[x - 1] + 1 if x > 0 else 0
            stop = chosen[x] if x < self.k else n
            for z in range(start, stop):
                if lo < vals[z] < hi:
                    return False
        return True

    def occurs(self, vals, n: int) -> bool:
        """Any occurrence in a complete permutation (len(vals) == n)."""
        k = self.k
        if k > n:
            return False
        lower, upper = self.lower, self.upper
        chosen = [0] * k
        has_cells = bool(self.cells)

        def rec(j: int, start: int) -> bool:
            lo, hi = lower[j], upper[j]
            last = j == k - 1
            for i in range(start, n - (k - 1 - j)):
                v = vals[i]
                if lo >= 0 and v < vals[chosen[lo]]:
                    continue
                if hi >= 0 and v > vals[chosen[hi]]:
                    continue
                chosen[j] = i
                if last:
                    if not has_cells or self._regions_empty(vals, n, chosen):
                        return True
                elif rec(j + 1, i + 1):
                    return True
            return False

        return rec(0, 0)

    def occurs_ending_at_last(self, vals, n: int) -> bool:
        """Any occurrence whose final index is the last filled position."""
        k = self.k
        m = len(vals)
        if k > m:
            return False
        last_pos = m - 1
        last_val = vals[last_pos]
        if k == 1:
            chosen = [last_pos]
            return not self.cells or self._regions_empty(vals, n, chosen)
        lower, upper, below = self.lower, self.upper, self.below_last
        chosen = [0] * k
        chosen[k - 1] = last_pos
        lo_k, hi_k = lower[k - 1], upper[k - 1]
        has_cells = bool(self.cells)

        def rec(j: int, start: int) -> bool:
            lo, hi = lower[j], upper[j]
            want_below = below[j]
            final = j == k - 2
            for i in range(start, last_pos - (k - 2 - j)):
                v = vals[i]
                if (v < last_val) != want_below:
                    continue
                if lo >= 0 and v < vals[chosen[lo]]:
                    continue
                if hi >= 0 and v > vals[chosen[hi]]:
                    continue
                chosen[j] = i
                if final:
                    if lo_k >= 0 and last_val < vals[chosen[lo_k]]:
                        continue
                    if hi_k >= 0 and last_val > vals[chosen[hi_k]]:
                        continue
                    if not has_cells or self._regions_empty(vals, n, chosen):
                        return True
                elif rec(j + 1, i + 1):
                    return True
            return False

        return rec(0, 0)


def _interval_admits(lo: int, hi: int, comparator: Comparator, rhs: int) -> bool:
    """Whether some value in [lo, hi] can satisfy ``value <comparator> rhs``."""
    if comparator is Comparator.EQ:
        return lo <= rhs <= hi
    if comparator is Comparator.NE:
        return not (lo == hi == rhs)
    if comparator is Comparator.LT:
        return lo < rhs
    if comparator is Comparator.LE:
        return lo <= rhs
    if comparator is Comparator.GT:
        return hi > rhs
    return hi >= rhs


class _Compiled:
    """A model turned into prefix checks and leaf checks."""

    def __init__(self, model: Model, prune: bool = True):
        n = model.length
        self.n = n
        self.prune = prune
        self.prefix_avoid: list[_MeshMatcher] = []
        self.leaf_patterns: list[tuple[_MeshMatcher, bool]] = []
        self.leaf_props: list[tuple[PropertyKind, bool]] = []
        self.leaf_preds: list[StatisticPredicate] = []
        self.bound_preds: list[tuple] = []
        self.involution = self.derangement = self.parity = False
        for c in model.constraints:
            if isinstance(c, PatternConstraint):
                matcher = _MeshMatcher(c.pattern)
                avoid = c.mode is Mode.AVOID
                if prune and avoid and matcher.prefix_monotone:
                    self.prefix_avoid.append(matcher)
                else:
                    self.leaf_patterns.append((matcher, avoid))
            elif isinstance(c, PropertyConstraint):
                self.leaf_props.append((c.kind, c.negate))
                if prune and not c.negate:
                    if c.kind is PropertyKind.INVOLUTION:
                        self.involution = True
                    elif c.kind is PropertyKind.DERANGEMENT:
                        self.derangement = True
                    elif c.kind is PropertyKind.PARITY:
                        self.parity = True
            elif isinstance(c, StatisticConstraint):
                self.leaf_preds.append(c.pred)
                if prune and c.pred.modulus is None:
                    self.bound_preds.append((self._bound_terms(c.pred), c.pred.comparator, c.pred.rhs))
            else:  # pragma: no cover
                raise TypeError(f"unknown constraint {c!r}")
        # cheap and selective checks first
        self.leaf_patterns.sort(key=lambda t: t[0].k)
        self.emit = model.emit
        self.track_stats = bool(self.leaf_preds or self.emit)

    def extend_ok(self, vals: list[int], used_before: int, acc) -> bool:
        """Check the prefix after its last value was placed; ``acc`` holds prefix statistics."""
        m = len(vals)
        v = vals[-1]
        if self.derangement and v == m:
            return False
        if self.parity and (v - m) & 1:
            return False
        if self.involution:
            if v < m:
                if vals[v - 1] != m:
                    return False
            elif used_before >> m & 1:
                return False
        for terms, comparator, rhs in self.bound_preds:
            lo, hi = self._bounds(terms, m, acc)
            if not _interval_admits(lo, hi, comparator, rhs):
                return False
        n = self.n
        for matcher in self.prefix_avoid:
            if matcher.occurs_ending_at_last(vals, n):
                return False
        return True

    def _bound_terms(self, pred: StatisticPredicate):
        """(slot, coefficient, slack table) per term; slack[m] bounds the growth after m positions."""
        n = self.n
        out = []
        for coef, stat in pred.terms:
            if stat is StatisticKind.INVERSIONS:
                slack = [(n - m) * (n - m - 1) // 2 for m in range(n + 1)]
            elif stat is StatisticKind.MAJOR_INDEX:
                slack = [sum(range(max(m, 1), n)) for m in range(n + 1)]
            elif stat is StatisticKind.EXCEDANCES:
                slack = [n - m for m in range(n + 1)]
            else:
                slack = [min(n - m, n - 1) for m in range(n + 1)]
            out.append((_STAT_SLOT[stat], coef, slack))
        return tuple(out)

    @staticmethod
    def _bounds(terms, m: int, acc) -> tuple[int, int]:
        lo_total = hi_total = 0
        for slot, coef, slack in terms:
            value = acc[slot]
            if coef >= 0:
                lo_total += coef * value
                hi_total += coef * (value + slack[m])
            else:
                lo_total += coef * (value + slack[m])
                hi_total += coef * value
        return lo_total, hi_total

    def leaf_ok(self, vals: list[int], acc) -> bool:
        for pred in self.leaf_preds:
            value = sum(coef * acc[_STAT_SLOT[stat]] for coef, stat in pred.terms)
            if pred.modulus is not None:
                value %= pred.modulus
            if not pred.comparator.apply(value, pred.rhs):
                return False
        perm = None
        for kind, negate in self.leaf_props:
            if perm is None:
                perm = Permutation(tuple(vals))
            if check_property(perm, kind) == negate:
                return False
        n = self.n
        for matcher, avoid in self.leaf_patterns:
            if matcher.occurs(vals, n) == avoid:
                return False
        return True


class _StopSearch(Exception):
    pass


class _Search:
    """Depth-first search below one prefix."""

    def __init__(self, compiled: _Compiled, want_solutions: bool, limit: int | None, node_limit: int | None):
        self.c = compiled
        self.want_solutions = want_solutions
        self.limit = limit
        self.node_limit = node_limit
        self.count = 0
        self.nodes = 0
        self.solutions: list[tuple[tuple[int, ...], tuple[int, ...]]] = []

    def run(self, prefix: tuple[int, ...]) -> None:
        c = self.c
        n = c.n
        vals: list[int] = []
        used = 0
        acc = (0, 0, 0, 0, 0)
        for v in prefix:
            acc = self._advance(vals, used, acc, v)
            vals.append(v)
            used |= 1 << v
        try:
            if len(vals) == n:
                self._leaf(vals, acc)
            else:
                self._dfs(vals, used, acc)
        except _StopSearch:
            pass

    @staticmethod
    def _advance(vals, used: int, acc, v: int):
        m = len(vals) + 1
        smaller_used = (used & ((1 << v) - 1)).bit_count()
        inv = acc[0] + (v - 1 - smaller_used)
        des, asc, exc, maj = acc[1], acc[2], acc[3], acc[4]
        if vals:
            if vals[-1] > v:
                des += 1
                maj += m - 1
            else:
                asc += 1
        if v > m:
            exc += 1
        return (inv, des, asc, exc, maj)

    def _leaf(self, vals, acc) -> None:
        if not self.c.leaf_ok(vals, acc):
            return
        self.count += 1
        if self.want_solutions:
            self.solutions.append((tuple(vals), tuple(acc)))
        if self.limit is not None and self.count >= self.limit:
            raise _StopSearch

    def _dfs(self, vals: list[int], used: int, acc) -> None:
        c = self.c
        n = c.n
        depth = len(vals) + 1
        for v in range(1, n + 1):
            if used >> v & 1:
                continue
            self.nodes += 1
            if self.node_limit is not None and self.nodes > self.node_limit:
                raise ResourceLimitExceeded(self.nodes, self.node_limit)
            new_acc = self._advance(vals, used, acc, v)
            vals.append(v)
            if c.extend_ok(vals, used, new_acc):
                if depth == n:
                    self._leaf(vals, new_acc)
                else:
                    self._dfs(vals, used | 1 << v, new_acc)
            vals.pop()


# -- public API -------------------------------------------------------------------


def _prefix_ok(compiled: _Compiled, prefix) -> bool:
    vals: list[int] = []
    used = 0
    acc = (0, 0, 0, 0, 0)
    for v in prefix:
        acc = _Search._advance(vals, used, acc, v)
        vals.append(v)
        if not compiled.extend_ok(vals, used, acc):
            return False
        used |= 1 << v
    return True


def prefix_feasible(pa: PartialAssignment, m: Model) -> bool:
    """False only when no completion of ``pa`` satisfies ``m``.

    True promises nothing: constraints decided at the leaves are not consulted.
    """
    if pa.n != m.length:
        raise ValueError(f"assignment is for length {pa.n}, model has length {m.length}")
    return _prefix_ok(_Compiled(m), pa.prefix)


def split_work(m: Model, cfg: SolveConfig) -> list[PartialAssignment]:
    """Feasible prefixes of length ``cfg.split_depth`` in lexicographic order."""
    n = m.length
    depth = cfg.split_depth
    if depth >= n:
        raise ValueError(f"split_depth {depth} must be below the length {n}")
    compiled = _Compiled(m, prune=cfg.prune)
    out: list[PartialAssignment] = []

    def rec(prefix: list[int], used: int, acc) -> None:
        if len(prefix) == depth:
            out.append(PartialAssignment(tuple(prefix), n))
            return
        for v in range(1, n + 1):
            if used >> v & 1:
                continue
            new_acc = _Search._advance(prefix, used, acc, v)
            prefix.append(v)
            if compiled.extend_ok(prefix, used, new_acc):
                rec(prefix, used | 1 << v, new_acc)
            prefix.pop()

    rec([], 0, (0, 0, 0, 0, 0))
    return out


def _solve_subtree(args):
    model, prefix, want_solutions, limit, prune, node_limit = args
    search = _Search(_Compiled(model, prune=prune), want_solutions, limit, node_limit)
    search.run(prefix)
    return search.count, search.solutions, search.nodes


def solve(m: Model, cfg: SolveConfig | None = None) -> SolveOutcome:
    """All permutations of length ``m.length`` satisfying every constraint of ``m``.

    Solutions are in lexicographic order. ``cfg.split_depth`` is capped at
    ``m.length - 1``.
    """
    cfg = cfg or SolveConfig()
    depth = min(cfg.split_depth, m.length - 1)
    roots = split_work(m, SolveConfig(split_depth=depth, prune=cfg.prune))
    want = cfg.mode == "enumerate"
    # one extra solution tells us whether the limit truncated anything
    sub_limit = None if cfg.limit is None else cfg.limit + 1
    tasks = [(m, pa.prefix, want, sub_limit, cfg.prune, cfg.node_limit) for pa in roots]
    log.debug("solving length %d over %d subtrees with %d worker(s)", m.length, len(tasks), cfg.workers)

    count = 0
    nodes = len(roots)
    solutions: list[tuple[tuple[int, ...], tuple[int, ...]]] = []

    def merge(results) -> None:
        nonlocal count, nodes
        for sub_count, sub_solutions, sub_nodes in results:
            count += sub_count
            nodes += sub_nodes
            solutions.extend(sub_solutions)
            if cfg.node_limit is not None and nodes > cfg.node_limit:
                raise ResourceLimitExceeded(nodes, cfg.node_limit)
            if sub_limit is not None and count >= sub_limit:
                break

    if cfg.workers == 1 or len(tasks) <= 1:
        merge(_solve_subtree(t) for t in tasks)
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunk = max(1, len(tasks) // (cfg.workers * 8))
            merge(pool.map(_solve_subtree, tasks, chunksize=chunk))

    exhausted = True
    if cfg.limit is not None and count > cfg.limit:
        exhausted = False
        count = cfg.limit
        del solutions[cfg.limit :]
    emit = m.emit
    out = [
        Solution(Permutation(images), {s: acc[_STAT_SLOT[s]] for s in emit})
        for images, acc in solutions
    ]
    return SolveOutcome(count=count, solutions=out, exhausted=exhausted, nodes=nodes)
