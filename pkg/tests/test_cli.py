"""CLI behaviour and golden reports.

Regenerate the golden files with ``python3 tests/test_cli.py --regen`` and
review the diff before committing.
"""

import csv
import io
import json
import sys
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from finsubset.cli import (
    EXIT_ARGS,
    EXIT_CEILING,
    EXIT_OK,
    group_from_record,
    main,
    make_record,
    parse_json_report,
    parse_range,
    render,
)
from finsubset.intalg import AbelianGroup

GOLDEN_DIR = Path(__file__).with_name("golden")

GOLDEN = {
    "sphere_k2-6_unbased.txt": ["sphere", "--k", "2-6"],
    "sphere_k1-6_based.txt": ["sphere", "--k", "1-6", "--based"],
    "sphere_k4_based.json": ["sphere", "--k", "4", "--based", "--coeff", "z", "--format", "json"],
    "sphere_k2-8_q.csv": ["sphere", "--k", "2-8", "--coeff", "q", "--format", "csv"],
    "surface_orientable.txt": ["surface", "--genus", "0-2", "--k", "3-4"],
    "surface_g3_nonorientable_k4.txt": ["surface", "--genus", "3", "--non-orientable", "--k", "4"],
    "exp3_g0-3.txt": ["exp3", "--genus", "0-3", "--check-euler"],
    "exp3_g2.json": ["exp3", "--genus", "2", "--format", "json"],
    "clipped_k5_rational.txt": ["clipped", "--k", "5", "--rational"],
    "clipped_k3-6.txt": ["clipped", "--k", "3-6"],
    "oracle_s2_k2.txt": ["oracle", "--space", "S2", "--k", "2"],
    "oracle_counts_s2min.txt": ["oracle", "--space", "S2-MIN", "--k", "3-4", "--counts-only"],
}


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden(name, capsys):
    code, out, _ = run(GOLDEN[name], capsys)
    assert code == EXIT_OK
    assert out == (GOLDEN_DIR / name).read_text(encoding="utf-8")


def test_sphere_k4_based_table(capsys):
    code, out, _ = run(["sphere", "--k", "4", "--based"], capsys)
    assert code == EXIT_OK
    assert "H_6 = Z\n" in out and "H_4 = Z/2\n" in out and "chi = 2" in out


def test_sphere_k1_based_is_a_point(capsys):
    _, out, _ = run(["sphere", "--k", "1", "--based"], capsys)
    assert [l for l in out.splitlines() if l.startswith("H_")] == ["H_0 = Z"]


def test_sphere_rational_k7(capsys):
    _, out, _ = run(["sphere", "--k", "7", "--coeff", "q", "--format", "json"], capsys)
    groups = parse_json_report(out)[0]["groups"]
    nonzero = {int(d) for d, g in groups.items() if g["free_rank"]}
    assert nonzero == {0, 12, 14}


def test_exp3_g2_reports_chi(capsys):
    _, out, _ = run(["exp3", "--genus", "2"], capsys)
    assert "chi = -3" in out
    assert "H^4 = Z^7 + Z/2 + Z/2 + Z/2 + Z/2" in out


def test_surface_nonorientable(capsys):
    _, out, _ = run(["surface", "--genus", "3", "--non-orientable", "--k", "4"], capsys)
    assert "H_8 = 0\n" in out and "H_7 = Z/2\n" in out


def test_output_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = run(["exp3", "--genus", "1", "--format", "json", "-o", str(target)], capsys)
    assert code == EXIT_OK and out == ""
    rec = parse_json_report(target.read_text())[0]
    assert group_from_record(rec["groups"]["5"]) == AbelianGroup(2, (2,))


def test_csv_schema(capsys):
    _, out, _ = run(["surface", "--genus", "1", "--k", "3", "--format", "csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0].keys() == {"command", "params", "dim", "group", "free_rank", "torsion"}
    assert [(r["dim"], r["group"]) for r in rows] == [("5", "Z^2"), ("6", "Z")]


@pytest.mark.parametrize("argv", [
    ["sphere", "--k", "10"],
    ["sphere", "--k", "13", "--coeff", "q"],
    ["nonsense"],
    ["sphere", "--k", "5-3"],
    ["oracle", "--space", "RP2", "--k", "2"],
    ["exp3", "--genus", "-1"],
])
def test_bad_arguments_exit_2(argv, capsys):
    assert run(argv, capsys)[0] == EXIT_ARGS


def test_ceiling_exit_3(capsys, monkeypatch):
    assert run(["oracle", "--k", "3", "--ceiling", "1000"], capsys)[0] == EXIT_CEILING
    monkeypatch.setenv("FINSUBSET_CEILING", "500")
    assert run(["oracle", "--k", "3"], capsys)[0] == EXIT_CEILING


def test_triangulation_file(tmp_path, capsys):
    f = tmp_path / "circle.txt"
    f.write_text("0 1\n1 2\n0 2\n")
    code, out, _ = run(["oracle", "--triangulation", str(f), "--k", "1"], capsys)
    assert code == EXIT_OK and "H_1 = Z\n" in out
    assert run(["oracle", "--triangulation", str(tmp_path / "none.txt"), "--k", "1"],
               capsys)[0] == EXIT_ARGS


def test_parse_range():
    assert parse_range("4") == [4]
    assert parse_range("3-6") == parse_range("3..6") == [3, 4, 5, 6]
    assert parse_range("2,4") == [2, 4]


groups_st = st.dictionaries(
    st.integers(0, 20),
    st.builds(lambda r, t: AbelianGroup.from_orders(r, t), st.integers(0, 5),
              st.lists(st.integers(2, 12), max_size=3)),
    max_size=5)


@given(groups_st, st.dictionaries(st.sampled_from(["chi", "note"]), st.integers(-5, 5)))
def test_json_round_trip(groups, extra):
    rec = make_record("sphere", "t", {"k": 3}, groups, extra)
    back = parse_json_report(render([rec], "json"))
    assert back == [json.loads(json.dumps(rec))]
    assert {int(d): group_from_record(e) for d, e in back[0]["groups"].items()} == groups


def regenerate():
    from contextlib import redirect_stdout
    GOLDEN_DIR.mkdir(exist_ok=True)
    for name, argv in GOLDEN.items():
        buf = io.StringIO()
        with redirect_stdout(buf):
            assert main(argv) == EXIT_OK, name
        (GOLDEN_DIR / name).write_text(buf.getvalue(), encoding="utf-8")


if __name__ == "__main__":
    if "--regen" in sys.argv:
        regenerate()
