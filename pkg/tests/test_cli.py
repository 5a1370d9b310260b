import csv
import io
import json
import subprocess
import sys

import pytest

from disclab.cli import load_json, main, records_from_json, to_jsonable
from disclab.discriminator import disc_brute


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def results(argv, capsys):
    code, out, _ = run(argv + ["--format", "json"], capsys)
    assert code == 0
    return load_json(out)["results"]


# ---------------------------------------------------------------------------
# Subcommand examples
# ---------------------------------------------------------------------------

def test_seq(capsys):
    rows = results(["seq", "-k", "1", "0", "10"], capsys)
    assert [r["value"] for r in rows] == [0, 1, 6, 35, 204, 1189, 6930, 40391, 235416,
                                          1372105, 7997214]
    assert [r["value"] for r in results(["seq", "-k", "1", "0", "0"], capsys)] == [0]
    assert [r["value"] for r in results(["seq", "-k", "2", "0", "3", "-m", "9"], capsys)] == [0, 1, 1, 0]


def test_disc(capsys):
    (row,) = results(["disc", "-k", "1", "-n", "130", "--method", "auto"], capsys)
    assert row["value"] == 250 and row["certified"] is True
    (row,) = results(["disc", "-k", "1", "-n", "1"], capsys)
    assert row["value"] == 1


def test_disc_range_matches_oracle(capsys):
    from disclab.bigmod import LucasParams
    rows = results(["disc", "-k", "3", "--range", "2..200", "--method", "auto"], capsys)
    assert [r["n"] for r in rows] == list(range(2, 201))
    for r in rows[::13]:
        assert r["value"] == disc_brute(LucasParams(3), r["n"]).value


def test_disc_methods_agree(capsys):
    a = results(["disc", "-k", "2", "--range", "1..300", "--method", "brute"], capsys)
    b = results(["disc", "-k", "2", "--range", "1..300", "--method", "closed"], capsys)
    assert [r["value"] for r in a] == [r["value"] for r in b]


def test_z(capsys):
    assert results(["z", "-k", "1", "-m", "50"], capsys)[0]["z"] == 30
    assert results(["z", "-k", "1", "-m", "1"], capsys)[0]["z"] == 1
    (row,) = results(["z", "-k", "1", "-m", "29", "--brute"], capsys)
    assert row["z"] == 5 and row["z_brute"] == 5 and row["match"] is True
    rows = results(["z", "-k", "6", "--range", "1..300", "--brute"], capsys)
    assert all(r["match"] for r in rows)


def test_sets(capsys):
    rows = results(["sets", "-k", "1", "--limit", "20"], capsys)
    assert [r["m"] for r in rows if r["set"] == "A"] == [1]
    assert [r["m"] for r in rows if r["set"] == "B"] == [2, 4, 8, 16]


def test_mset(capsys):
    code, out, _ = run(["mset", "--count", "21", "--format", "json"], capsys)
    doc = load_json(out)
    assert [r["b"] for r in doc["results"]] == [3, 6, 9, 12, 15, 18, 21]
    assert "1/3" in doc["diagnostics"][0]


def test_fk(capsys):
    assert results(["fk", "-k", "2", "--nmax", "2000"], capsys) == []


def test_sunit(capsys):
    assert results(["sunit", "next", "--primes", "2,5", "--min", "1,1", "17"], capsys)[0]["next"] == 20
    assert results(["sunit", "gap25", "-n", "3"], capsys)[0]["found"] is False
    assert [r["e"] for r in results(["sunit", "e37"], capsys)] == [6, 11, 16, 21, 27]
    assert [r["k"] for r in results(["sunit", "lbg", "--kmax", "10"], capsys)] == [1, 2, 3, 8]
    rows = results(["sunit", "gap", "--p", "3", "--ratio", "3/2", "1", "1000"], capsys)
    assert rows == [{"n": 1}]


def test_verify_quick(capsys):
    code, out, err = run(["verify", "--suite", "c5"], capsys)
    assert code == 0
    assert "PASS" in err


# ---------------------------------------------------------------------------
# Exit codes and errors
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    [],
    ["seq"],
    ["disc", "-k", "1"],
    ["disc", "-k", "1", "--range", "9..3"],
    ["disc", "-k", "0", "-n", "4"],
    ["disc", "-n", "4"],
    ["z", "-k", "1", "-m", "0"],
    ["verify", "--suite", "nope"],
    ["--threads", "0", "seq", "-k", "1", "0", "1"],
    ["--format", "xml", "seq", "-k", "1", "0", "1"],
    ["mset", "--count", "5", "--precision-bits", "64"],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 1
    assert capsys.readouterr().err


def test_capacity_exit(capsys):
    code, _, err = run(["z", "-k", "1", "-m", str((10**9 + 7) * (10**9 + 9)),
                        "--factor-bound", "1000"], capsys)
    assert code == 2 and "capacity" in err


def test_inconsistency_exit(monkeypatch, capsys):
    from disclab import discriminator
    from disclab.discriminator import _record

    def broken(n):
        return _record(discriminator.LucasParams(1), n, 7, "closed_k1")
    monkeypatch.setattr(discriminator, "disc_closed_k1", broken)
    code, _, err = run(["disc", "-k", "1", "-n", "5"], capsys)
    assert code == 3 and "inconsistency" in err


def test_verify_failure_exit(monkeypatch, capsys):
    from disclab import cli
    from disclab.verify import CriterionResult

    monkeypatch.setattr(cli, "run_suite",
                        lambda name, threads: [CriterionResult("c0", "fake", False, "boom", 0.0)])
    code, _, err = run(["verify", "--suite", "c1"], capsys)
    assert code == 3 and "FAIL" in err


# ---------------------------------------------------------------------------
# Output formats
# ---------------------------------------------------------------------------

def test_global_flags_before_subcommand(capsys):
    a = results(["-k", "1", "disc", "-n", "130"], capsys)
    b = results(["disc", "-k", "1", "-n", "130"], capsys)
    assert a == b


def test_json_round_trip(capsys):
    code, out, _ = run(["disc", "-k", "1", "--range", "120..160", "--format", "json"], capsys)
    recs = records_from_json(out)
    assert len(recs) == 41 and recs[10].value == 250
    again = json.dumps(to_jsonable({"results": [r.__dict__ for r in recs]}))
    assert records_from_json(again) == recs


def test_big_integers_as_strings(capsys):
    code, out, _ = run(["seq", "-k", "1", "40", "41", "--format", "json"], capsys)
    raw = json.loads(out)["results"]
    assert all(isinstance(r["value"], str) for r in raw)
    from disclab.bigmod import LucasParams, lucas_u
    assert load_json(out)["results"][0]["value"] == lucas_u(LucasParams(1), 40)
    assert isinstance(json.loads(out)["results"][0]["n"], int)


def test_csv(capsys):
    code, out, err = run(["seq", "-k", "1", "38", "41", "--format", "csv"], capsys)
    assert code == 0 and "config" in err
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "value"]
    from disclab.bigmod import LucasParams, lucas_u
    for n, value in rows[1:]:
        assert int(value) == lucas_u(LucasParams(1), int(n))
        assert "e" not in value.lower()


def test_csv_quotes_nested_fields(capsys):
    code, out, _ = run(["z", "-k", "1", "-m", "50", "--format", "csv"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["m", "z", "method", "breakdown"]
    assert json.loads(rows[1][3])[1]["z_pb"] == 15


def test_threads_determinism(capsys, monkeypatch):
    argv = ["disc", "-k", "5", "--range", "1..400", "--format", "json"]
    _, one, _ = run(argv + ["--threads", "1"], capsys)
    _, four, _ = run(argv + ["--threads", "4"], capsys)
    monkeypatch.setenv("DISCLAB_THREADS", "auto")
    _, env, _ = run(argv, capsys)
    assert one == four == env


def test_out_file(tmp_path, capsys):
    path = tmp_path / "o.json"
    code, out, _ = run(["z", "-k", "1", "-m", "29", "--format", "json", "--out", str(path)], capsys)
    assert code == 0 and out == ""
    assert load_json(path.read_text())["results"][0]["z"] == 5


def test_text_format(capsys):
    code, out, _ = run(["sunit", "e37"], capsys)
    lines = out.splitlines()
    assert lines[0].startswith("# config") and lines[1].split() == ["i", "e"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "disclab.cli", "z", "-k", "1", "-m", "13",
                           "--format", "json"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"][0]["z"] == 7
    proc = subprocess.run([sys.executable, "-m", "disclab.cli", "bogus"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
