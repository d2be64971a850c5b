import pytest

from permforge import Model, SolveConfig, classic, solve
from permforge.cli import main
from permforge.oeis import A000712, compare_stabilized, get_sequence
from permforge.sweep import SweepSpec, parse_range, read_csv, run_sweep, write_csv

from _corpus import AVOID_1324, INVERSION_GRID, INVERSION_GRID_UPPER, inversions_eq, perm, grid_cell


def test_parse_range():
    assert parse_range("1..10") == (1, 10)
    assert parse_range("5") == (5, 5)
    for bad in ("3..1", "a..b", "1..", ""):
        with pytest.raises(ValueError):
            parse_range(bad)


def test_small_sweep_matches_table():
    result = run_sweep(SweepSpec((1, 7), (0, 6)))
    assert [result.cell(7, k) for k in range(7)] == [1, 2, 5, 10, 20, 36, 61]
    for n in range(1, 8):
        for k in range(7):
            assert result.cell(n, k) == grid_cell(n, k)
    assert run_sweep(SweepSpec((5, 5), (9, 9))).cell(5, 9) == 4
    two = run_sweep(SweepSpec((2, 2), (0, 1)))
    assert [two.cell(2, 0), two.cell(2, 1)] == [1, 1]


def test_sweep_rows_8_and_9():
    result = run_sweep(SweepSpec((8, 9), (0, 20)))
    assert result.as_table() == {n: {k: grid_cell(n, k) for k in range(21)} for n in (8, 9)}


def test_sweep_offset_columns_match_per_cell_solves():
    result = run_sweep(SweepSpec((4, 7), (3, 12)), SolveConfig(workers=2, split_depth=1))
    for n in range(4, 8):
        for k in range(3, 13):
            expected = solve(Model(n, (AVOID_1324, inversions_eq(k))), SolveConfig(mode="count")).count
            assert result.cell(n, k) == expected == grid_cell(n, k)


def test_sweep_other_pattern():
    # avoiding 21 leaves only the identity
    result = run_sweep(SweepSpec((1, 4), (0, 3), perm("21")))
    assert result.counts.sum(axis=1).tolist() == [1, 1, 1, 1]
    assert result.counts[:, 0].tolist() == [1, 1, 1, 1]
    assert classic(perm("21")).k == 2


def test_sweep_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec((0, 3), (0, 1))
    with pytest.raises(ValueError):
        SweepSpec((1, 3), (-1, 1))


def test_csv_round_trip(tmp_path):
    result = run_sweep(SweepSpec((1, 6), (0, 5)))
    text = write_csv(result)
    lines = text.splitlines()
    assert lines[0] == "n,0,1,2,3,4,5,stable_k"
    assert lines[6] == "6,1,2,5,10,20,32,4"
    assert lines[1].endswith(",")
    path = tmp_path / "s.csv"
    path.write_text(text)
    assert read_csv(path) == result.as_table()
    assert result.diagonal() == [(k + 2, k) for k in range(5)]


def _table_csv(path, rows, ks):
    lines = ["n," + ",".join(map(str, ks))]
    for n, row in rows.items():
        lines.append(",".join([str(n), *(str(row[k]) if k < len(row) else "0" for k in ks)]))
    path.write_text("\n".join(lines) + "\n")
    return path


def test_compare_against_published_table(tmp_path, capsys):
    rows = {**INVERSION_GRID, **INVERSION_GRID_UPPER}
    path = _table_csv(tmp_path / "t.csv", rows, range(21))
    results = compare_stabilized(read_csv(path), A000712)
    assert [r.status for r in results] == ["match"] * 21
    assert results[20].stabilized == 24842
    assert main(["compare-oeis", str(path), "--sequence", "A000712"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "k=0\tstabilized=1\texpected=1\tmatch"
    assert out[20] == "k=20\tstabilized=24842\texpected=24842\tmatch"


def test_compare_reports_mismatch_and_skips(tmp_path):
    rows = {n: list(r) for n, r in INVERSION_GRID.items()}
    rows[9][3] = 11
    results = compare_stabilized(read_csv(_table_csv(tmp_path / "t.csv", rows, range(12))), A000712)
    by_k = {r.k: r for r in results}
    assert by_k[3].status == "mismatch" and "n=9" in by_k[3].detail
    assert by_k[8].status == "match"
    assert by_k[9].status == "skipped"
    assert main(["compare-oeis", str(tmp_path / "t.csv")]) == 1


def test_compare_oeis_usage_errors(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    assert main(["compare-oeis", str(empty)]) == 2
    narrow = _table_csv(tmp_path / "narrow.csv", {1: [1], 2: [1, 1]}, range(2, 4))
    assert main(["compare-oeis", str(narrow)]) == 2
    good = _table_csv(tmp_path / "good.csv", INVERSION_GRID, range(5))
    assert main(["compare-oeis", str(good), "--sequence", "A000001"]) == 2
    assert main(["compare-oeis", str(tmp_path / "missing.csv")]) == 2
    with pytest.raises(KeyError):
        get_sequence("A000001")
