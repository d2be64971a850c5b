"""Embedded OEIS reference terms and the stabilization comparison."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

__all__ = ["ReferenceSequence", "SEQUENCES", "get_sequence", "KComparison", "compare_stabilized"]


@dataclass(frozen=True)
class ReferenceSequence:
    name: str
    terms: tuple[int, ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("reference sequence needs at least one term")


# Number of partitions of n into parts of 2 kinds; offset 0.
A000712 = ReferenceSequence(
    "A000712",
    (
        1, 2, 5, 10, 20, 36, 65, 110, 185, 300, 481, 752, 1165, 1770, 2665, 3956,
        5822, 8470, 12230, 17490, 24842,
    ),
)

SEQUENCES = {A000712.name: A000712}


def get_sequence(name: str) -> ReferenceSequence:
    try:
        return SEQUENCES[name]
    except KeyError:
        known = ", ".join(sorted(SEQUENCES))
        raise KeyError(f"unknown sequence {name!r} (embedded: {known})") from None


@dataclass(frozen=True)
class KComparison:
    k: int
    status: str  # "match", "mismatch" or "skipped"
    stabilized: int | None
    expected: int | None
    detail: str = ""

    def line(self) -> str:
        got = "-" if self.stabilized is None else str(self.stabilized)
        want = "-" if self.expected is None else str(self.expected)
        text = f"k={self.k}\tstabilized={got}\texpected={want}\t{self.status}"
        return f"{text}\t{self.detail}" if self.detail else text


def compare_stabilized(table: Mapping[int, Mapping[int, int]], seq: ReferenceSequence) -> list[KComparison]:
    """Compare column k's value from row n = k+2 downward against ``seq.terms[k]``.

    ``table[n][k]`` is a count. A column matches when the row n = k+2 exists,
    equals the reference term and every later row repeats it.
    """
    ks = sorted({k for row in table.values() for k in row})
    out = []
    for k in ks:
        expected = seq.terms[k] if 0 <= k < len(seq.terms) else None
        rows = sorted(n for n in table if n >= k + 2 and k in table[n])
        if k + 2 not in table or k not in table[k + 2]:
            out.append(KComparison(k, "skipped", None, expected, f"no row n={k + 2}"))
            continue
        value = table[k + 2][k]
        if expected is None:
            out.append(KComparison(k, "skipped", value, None, f"{seq.name} has no term {k}"))
            continue
        drift = [n for n in rows if table[n][k] != value]
        if drift:
            detail = f"changes at n={drift[0]} ({table[drift[0]][k]})"
            out.append(KComparison(k, "mismatch", value, expected, detail))
        elif value != expected:
            out.append(KComparison(k, "mismatch", value, expected))
        else:
            out.append(KComparison(k, "match", value, expected))
    return out
