"""Counts of pattern-avoiding permutations by length and inversion number."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .model import Model, PatternConstraint, StatisticConstraint
from .patterns import Mode, classic
from .perm import Permutation
from .solver import SolveConfig, solve
from .statistics import Comparator, StatisticKind, StatisticPredicate

__all__ = ["SweepSpec", "SweepResult", "run_sweep", "write_csv", "read_csv", "parse_range"]

_DIAGONAL_COLUMN = "stable_k"


def parse_range(text: str) -> tuple[int, int]:
    """``"1..10"`` -> (1, 10); a bare ``"5"`` -> (5, 5)."""
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise ValueError(f"bad range {text!r}, expected A..B") from None
    if a > b:
        raise ValueError(f"empty range {text!r}")
    return a, b


@dataclass(frozen=True)
class SweepSpec:
    n_range: tuple[int, int]
    k_range: tuple[int, int]
    pattern: Permutation = Permutation((1, 3, 2, 4))

    def __post_init__(self):
        (n0, n1), (k0, k1) = self.n_range, self.k_range
        if n0 < 1 or n0 > n1:
            raise ValueError(f"bad length range {self.n_range}")
        if k0 < 0 or k0 > k1:
            raise ValueError(f"bad inversion range {self.k_range}")


@dataclass
class SweepResult:
    spec: SweepSpec
    counts: np.ndarray  # rows: lengths, columns: inversion numbers

    @property
    def n_values(self) -> list[int]:
        return list(range(self.spec.n_range[0], self.spec.n_range[1] + 1))

    @property
    def k_values(self) -> list[int]:
        return list(range(self.spec.k_range[0], self.spec.k_range[1] + 1))

    def cell(self, n: int, k: int) -> int:
        return int(self.counts[n - self.spec.n_range[0], k - self.spec.k_range[0]])

    def as_table(self) -> dict[int, dict[int, int]]:
        return {n: {k: self.cell(n, k) for k in self.k_values} for n in self.n_values}

    def diagonal(self) -> list[tuple[int, int]]:
        """Cells with n = k + 2, where the counts stop changing."""
        return [(k + 2, k) for k in self.k_values if k + 2 in self.n_values]


def run_sweep(spec: SweepSpec, cfg: SolveConfig | None = None) -> SweepResult:
    """One enumeration per length with inversions in the k range, histogrammed by inversions."""
    cfg = cfg or SolveConfig()
    cfg = SolveConfig(workers=cfg.workers, split_depth=cfg.split_depth, mode="enumerate", prune=cfg.prune)
    k0, k1 = spec.k_range
    n_values = range(spec.n_range[0], spec.n_range[1] + 1)
    counts = np.zeros((len(n_values), k1 - k0 + 1), dtype=np.int64)
    for row, n in enumerate(n_values):
        max_inv = n * (n - 1) // 2
        if k0 > max_inv:
            continue
        inv = ((1, StatisticKind.INVERSIONS),)
        constraints = [
            PatternConstraint(classic(spec.pattern), Mode.AVOID),
            StatisticConstraint(StatisticPredicate(inv, Comparator.LE, min(k1, max_inv))),
        ]
        if k0 > 0:
            constraints.append(StatisticConstraint(StatisticPredicate(inv, Comparator.GE, k0)))
        model = Model(n, tuple(constraints), emit=(StatisticKind.INVERSIONS,))
        for sol in solve(model, cfg).solutions:
            counts[row, sol.stats[StatisticKind.INVERSIONS] - k0] += 1
    return SweepResult(spec, counts)


def write_csv(result: SweepResult, out: io.TextIOBase | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    ks = result.k_values
    writer.writerow(["n", *ks, _DIAGONAL_COLUMN])
    for n in result.n_values:
        diag = n - 2 if ks[0] <= n - 2 <= ks[-1] else ""
        writer.writerow([n, *(result.cell(n, k) for k in ks), diag])
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text


def read_csv(path: str | Path) -> dict[int, dict[int, int]]:
    """Read a sweep CSV back as ``{n: {k: count}}``; non-numeric extra columns are ignored."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty CSV")
    header = rows[0]
    if not header or header[0] != "n":
        raise ValueError(f"{path}: first header cell must be 'n'")
    columns = {}
    for i, name in enumerate(header[1:], start=1):
        try:
            columns[i] = int(name)
        except ValueError:
            continue
    if not columns:
        raise ValueError(f"{path}: no inversion columns")
    table: dict[int, dict[int, int]] = {}
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        try:
            n = int(row[0])
            table[n] = {k: int(row[i]) for i, k in columns.items() if i < len(row) and row[i] != ""}
        except ValueError:
            raise ValueError(f"{path}:{line_no}: non-integer cell") from None
    if not table:
        raise ValueError(f"{path}: no data rows")
    return table
