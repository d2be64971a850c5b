"""``permforge`` command line.

Exit codes: 0 success / satisfied, 1 violated (``check``) or mismatch
(``compare-oeis``), 2 bad input. Payload goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .model import Model, ModelError, PatternConstraint, PropertyConstraint, StatisticConstraint, load_model
from .oeis import compare_stabilized, get_sequence
from .oracle import LengthCapExceeded, brute_force_solve
from .patterns import Mode, find_occurrences
from .perm import NotABijection, Permutation, parse_permutation
from .properties import check_property
from .solver import ResourceLimitExceeded, SolveConfig, SolveOutcome, solve
from .statistics import evaluate_predicate
from .sweep import SweepSpec, parse_range, read_csv, run_sweep, write_csv

log = logging.getLogger("permforge")


class UsageError(Exception):
    pass


def _load(path: str) -> Model:
    try:
        return load_model(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except ModelError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _config(args, mode: str) -> SolveConfig:
    limit = getattr(args, "limit", None)
    try:
        return SolveConfig(workers=args.workers, split_depth=args.split_depth, limit=limit, mode=mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _run(model: Model, args, mode: str) -> SolveOutcome:
    if args.oracle:
        try:
            outcome = brute_force_solve(model, limit=getattr(args, "limit", None))
        except LengthCapExceeded as exc:
            raise UsageError(str(exc)) from None
        return outcome
    return solve(model, _config(args, mode))


def cmd_check(args) -> int:
    model = _load(args.model)
    try:
        perm = parse_permutation(" ".join(args.perm))
    except NotABijection as exc:
        raise UsageError(f"bad permutation: {exc}") from None
    if len(perm) != model.length:
        raise UsageError(f"permutation has length {len(perm)}, model expects {model.length}")
    lines = []
    ok_all = True
    for i, c in enumerate(model.constraints, start=1):
        note = ""
        if isinstance(c, PatternConstraint):
            occs = find_occurrences(perm, c.pattern)
            ok = (not occs) if c.mode is Mode.AVOID else bool(occs)
            if occs:
                # report the occurrence with the smallest values, read left to right
                witness = min(occs, key=lambda occ: [perm(i) for i in occ])
                note = " (witness " + " ".join(map(str, witness)) + ")"
        elif isinstance(c, PropertyConstraint):
            ok = check_property(perm, c.kind) != c.negate
        elif isinstance(c, StatisticConstraint):
            ok = evaluate_predicate(perm, c.pred)
        else:  # pragma: no cover
            raise TypeError(c)
        ok_all &= ok
        lines.append(f"[{i}] {c.describe()}: {'satisfied' if ok else 'violated'}{note}")
    print("satisfied" if ok_all else "violated")
    for line in lines:
        print(line)
    return 0 if ok_all else 1


def cmd_count(args) -> int:
    model = _load(args.model)
    print(_run(model, args, "count").count)
    return 0


def cmd_enumerate(args) -> int:
    model = _load(args.model)
    outcome = _run(model, args, "enumerate")
    out = sys.stdout
    for sol in outcome.solutions:
        if args.format == "jsonl":
            doc = {"perm": list(sol.perm.images)}
            doc.update((s.value, v) for s, v in sol.stats.items())
            out.write(json.dumps(doc, separators=(",", ":")) + "\n")
        else:
            fields = [str(sol.perm), *(str(sol.stats[s]) for s in model.emit)]
            out.write("\t".join(fields) + "\n")
    if not outcome.exhausted:
        log.info("output truncated at %d solutions", outcome.count)
    return 0


def cmd_oracle(args) -> int:
    args.oracle = True
    return cmd_count(args) if args.count else cmd_enumerate(args)


def _parse_pattern_arg(tokens: list[str]) -> Permutation:
    try:
        return parse_permutation(" ".join(tokens))
    except NotABijection as exc:
        raise UsageError(f"bad --avoid pattern: {exc}") from None


def cmd_sweep(args) -> int:
    try:
        spec = SweepSpec(parse_range(args.n), parse_range(args.k), _parse_pattern_arg(args.avoid))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = run_sweep(spec, _config(args, "enumerate"))
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            write_csv(result, fh)
        for n, k in result.diagonal():
            log.info("stabilization cell n=%d k=%d: %d", n, k, result.cell(n, k))
    else:
        write_csv(result, sys.stdout)
    return 0


def cmd_compare_oeis(args) -> int:
    try:
        seq = get_sequence(args.sequence)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    try:
        table = read_csv(args.csv)
    except OSError as exc:
        raise UsageError(f"cannot read {args.csv}: {exc.strerror}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = compare_stabilized(table, seq)
    for row in rows:
        print(row.line())
    compared = [r for r in rows if r.status != "skipped"]
    if not compared:
        raise UsageError("no column has a row at n = k+2 to compare")
    return 0 if all(r.status == "match" for r in compared) else 1


def _add_solver_flags(p: argparse.ArgumentParser, oracle: bool = True) -> None:
    p.add_argument("--workers", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--split-depth", type=int, default=2, help="prefix depth for work splitting (default 2)")
    if oracle:
        p.add_argument("--oracle", action="store_true", help="use the brute-force reference (length <= 9)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permforge", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate a model's constraints on one permutation")
    p.add_argument("model")
    p.add_argument("perm", nargs="+", help='one-indexed values, e.g. 5 2 1 6 3 4')
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("count", help="count the solutions of a model")
    p.add_argument("model")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list the solutions of a model in lexicographic order")
    p.add_argument("model")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--format", choices=("lines", "jsonl"), default="lines")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("oracle", help="brute-force count or enumeration (length <= 9)")
    p.add_argument("model")
    p.add_argument("--count", action="store_true", help="print the count instead of the solutions")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--format", choices=("lines", "jsonl"), default="lines")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sweep", help="count pattern avoiders by length and inversion number")
    p.add_argument("--avoid", nargs="+", default=["1324"], help="classic pattern, e.g. 1324 or 1 3 2 4")
    p.add_argument("--n", required=True, help="length range A..B")
    p.add_argument("--k", required=True, help="inversion range A..B")
    p.add_argument("--csv", default=None, help="write the table here instead of stdout")
    _add_solver_flags(p, oracle=False)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare-oeis", help="check sweep columns stabilize onto an embedded sequence")
    p.add_argument("csv")
    p.add_argument("--sequence", default="A000712")
    p.set_defaults(func=cmd_compare_oeis)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"permforge: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitExceeded as exc:
        print(f"permforge: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
