"""CLI surface: exit codes, output formats, catalog persistence."""

import json
import subprocess
import sys

import pytest

from cycdecomp.catalog import CatalogError, append_instances, read_records
from cycdecomp.cli import main
from cycdecomp.search import make_instance

PAPER_SET = (6, 16, 26, 41)
PAPER_BLOCKS = [[(0, 1), (0, 2), (2, 3)], [(0, 3), (1, 2), (1, 3)]]


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# verify-paper


def test_verify_paper_passes(capsys):
    code, out, _ = run_cli(capsys, "verify-paper")
    assert code == 0
    assert "8 checks passed" in out
    assert out.count("[  ok]") == 8


def test_verify_paper_json_schema(capsys):
    code, out, _ = run_cli(capsys, "verify-paper", "--json")
    assert code == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert len(lines) == 8
    for obj in lines:
        assert set(obj) == {"name", "pass", "expected", "actual"}
        assert obj["pass"] is True


@pytest.mark.parametrize("check", [
    "decomposition-blocks", "cyclicity-rewrites", "sum-of-squares-2649",
    "cube-gap-1331", "prime-gap-13", "quintic-discriminant",
    "two-squares-659", "resolvent-consistency",
])
def test_verify_paper_corruption_detected(capsys, check):
    code, out, err = run_cli(capsys, "verify-paper", "--corrupt", check)
    assert code == 1
    assert check in err
    assert f"[FAIL] {check}" in out


# ---------------------------------------------------------------------------
# search command


def test_search_cli_paper_instance(capsys):
    code, out, _ = run_cli(
        capsys, "search", "--k", "4", "--m", "2", "--min", "1", "--max", "41",
        "--distinct", "--filter", "cube-gap")
    assert code == 0
    objs = [json.loads(line) for line in out.strip().splitlines()]
    assert all(set(o) == {"tuple", "m", "blocks", "block_sum", "sum_squares",
                          "gap", "tags", "provenance", "key"} for o in objs)
    target = [o for o in objs if o["tuple"] == [6, 16, 26, 41]]
    assert len(target) == 1 and target[0]["block_sum"] == 1318


def test_search_cli_empty_is_ok(capsys):
    code, out, _ = run_cli(capsys, "search", "--k", "2", "--m", "2",
                           "--min", "1", "--max", "9")
    assert code == 0
    assert out == ""


def test_search_cli_table_format(capsys):
    code, out, _ = run_cli(
        capsys, "search", "--k", "4", "--m", "2", "--min", "1", "--max", "12",
        "--limit", "2", "--format", "table")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split("\t") == ["tuple", "m", "block_sum", "sum_squares",
                                    "gap", "tags", "provenance"]
    assert len(lines) == 3


def test_search_cli_out_file(tmp_path, capsys):
    target = tmp_path / "results.jsonl"
    code, out, _ = run_cli(
        capsys, "search", "--k", "4", "--m", "2", "--min", "1", "--max", "12",
        "--limit", "5", "--out", str(target))
    assert code == 0
    assert out == ""
    assert len(target.read_text().strip().splitlines()) == 5


def test_search_cli_invalid_flags(capsys):
    code, _, err = run_cli(capsys, "search", "--k", "1", "--m", "2",
                           "--min", "1", "--max", "5")
    assert code == 2
    assert "error" in err


def test_search_cli_budget_abort(capsys):
    code, out, err = run_cli(
        capsys, "search", "--k", "4", "--m", "2", "--min", "1", "--max", "12",
        "--node-budget", "500")
    assert code == 3
    assert "partial results" in err
    assert out  # some instances were still emitted


def test_search_cli_db_dedup(tmp_path, capsys):
    db = tmp_path / "cat.jsonl"
    args = ("search", "--k", "4", "--m", "2", "--min", "1", "--max", "12",
            "--limit", "4", "--db", str(db))
    run_cli(capsys, *args)
    first = db.read_text()
    assert len(first.strip().splitlines()) == 4
    run_cli(capsys, *args)
    assert len(db.read_text().strip().splitlines()) == 4


# ---------------------------------------------------------------------------
# algebra commands


def test_algebra_periods(capsys):
    code, out, _ = run_cli(capsys, "algebra", "periods", "--p", "11", "--e", "5")
    assert code == 0
    assert "x^5 + x^4 - 4*x^3 - 3*x^2 + 3*x + 1" in out
    assert "discriminant: 14641" in out


def test_algebra_periods_json(capsys):
    code, out, _ = run_cli(capsys, "algebra", "periods", "--p", "11", "--e", "5", "--json")
    obj = json.loads(out)
    assert obj["polynomial"] == [1, 3, -3, -4, 1, 1]
    assert obj["discriminant"] == 14641
    assert obj["periods"][0] == [1, 10]


def test_algebra_periods_invalid(capsys):
    code, _, err = run_cli(capsys, "algebra", "periods", "--p", "12", "--e", "5")
    assert code == 2 and "error" in err
    code, _, err = run_cli(capsys, "algebra", "periods", "--p", "211", "--e", "5")
    assert code == 2  # outside default range without --allow-large


def test_algebra_resolvent(capsys):
    code, out, _ = run_cli(capsys, "algebra", "resolvent",
                           "--p", "11", "--e", "5", "--t", "1", "--json")
    obj = json.loads(out)
    assert obj["coeff_tuple"] == [6, 41, 16, 26]
    assert obj["conj_product"] == 1331
    assert obj["class_sums"] == [1318, 1318]
    assert obj["sum_squares"] == 2649
    assert obj["norm"] == 1771561


def test_algebra_two_squares(capsys):
    code, out, _ = run_cli(capsys, "algebra", "two-squares", "659")
    assert code == 0
    assert "not representable" in out
    code, out, _ = run_cli(capsys, "algebra", "two-squares", "1318", "--json")
    obj = json.loads(out)
    assert obj == {"n": 1318, "representable": False, "offending_prime": 659}


def test_algebra_discriminant(capsys):
    code, out, _ = run_cli(capsys, "algebra", "discriminant", "--",
                           "-1", "3", "3", "-4", "-1", "1")
    assert code == 0
    assert "discriminant: 14641" in out


# ---------------------------------------------------------------------------
# catalog commands


def test_catalog_list_and_export_round_trip(tmp_path, capsys):
    db = tmp_path / "cat.jsonl"
    inst = make_instance(PAPER_SET, PAPER_BLOCKS)
    assert append_instances(str(db), [inst], "test") == 1
    assert append_instances(str(db), [inst], "test") == 0  # dedup

    code, out, _ = run_cli(capsys, "catalog", "list", "--db", str(db))
    assert code == 0
    assert "1318" in out and "(6,16,26,41)" in out

    code, export1, _ = run_cli(capsys, "catalog", "export", "--db", str(db))
    assert code == 0
    # export of an exported file is byte-identical
    copy = tmp_path / "copy.jsonl"
    copy.write_text(export1)
    code, export2, _ = run_cli(capsys, "catalog", "export", "--db", str(copy))
    assert code == 0
    assert export1 == export2


def test_catalog_missing_db(capsys):
    code, _, err = run_cli(capsys, "catalog", "list", "--db", "/nonexistent/x.jsonl")
    assert code == 2
    assert "error" in err


def test_catalog_corrupt_db_names_line(tmp_path, capsys):
    db = tmp_path / "bad.jsonl"
    inst = make_instance(PAPER_SET, PAPER_BLOCKS)
    append_instances(str(db), [inst], "test")
    with open(db, "a", encoding="utf-8") as fh:
        fh.write("{not json\n")
    code, _, err = run_cli(capsys, "catalog", "list", "--db", str(db))
    assert code == 2
    assert ":2:" in err  # line number of the first malformed record


def test_catalog_records_self_consistent(tmp_path):
    db = tmp_path / "cat.jsonl"
    inst = make_instance(PAPER_SET, PAPER_BLOCKS)
    append_instances(str(db), [inst], "unit")
    records = read_records(str(db))
    assert len(records) == 1
    assert records[0].key == inst.key
    assert records[0].instance == inst
    assert records[0].generator == "unit"


def test_catalog_torn_write_detected(tmp_path):
    db = tmp_path / "cat.jsonl"
    inst = make_instance(PAPER_SET, PAPER_BLOCKS)
    append_instances(str(db), [inst], "unit")
    whole = db.read_bytes()
    db.write_bytes(whole[: len(whole) // 2])  # simulate a torn append
    with pytest.raises(CatalogError):
        read_records(str(db))


# ---------------------------------------------------------------------------
# determinism through the real process boundary


def test_search_byte_identical_across_jobs_subprocess():
    cmd = [sys.executable, "-m", "cycdecomp", "search", "--k", "4", "--m", "2",
           "--min", "1", "--max", "14"]
    outs = []
    for jobs in ("1", "2", "1"):
        proc = subprocess.run(cmd + ["--jobs", jobs], capture_output=True, timeout=120)
        assert proc.returncode == 0, proc.stderr
        outs.append(proc.stdout)
    assert outs[0] == outs[1] == outs[2]
