from __future__ import annotations

import argparse
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from conftest import P
from hilbert_sundial.cli import iter_jsonl, main, parse_range
from hilbert_sundial.geometry import random_line
from hilbert_sundial.io import dump_scheme
from hilbert_sundial.schemes import LineComponent, Scheme

FIELDS = ["cmd", "n", "d", "s", "l", "prime", "seed", "trial",
          "computed_dim", "expected_dim", "match", "elapsed_ms"]


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def records(*argv):
    code, text = run(*argv)
    return code, list(iter_jsonl(text))


def test_verify_example():
    code, recs = records("verify", "--n", "3", "--d", "4", "--sundials", "3", "--lines", "1",
                         "--seed", "42")
    assert code == 0
    (rec,) = recs
    assert list(rec) == FIELDS
    assert (rec["computed_dim"], rec["expected_dim"], rec["match"]) == (0, 0, True)


def test_verify_linear_forms():
    code, recs = records("verify", "--n", "3", "--d", "1", "--sundials", "1", "--lines", "0")
    assert code == 0 and recs[-1]["computed_dim"] == 0 == recs[-1]["expected_dim"]


@pytest.mark.parametrize("argv", [
    ["verify", "--n", "2", "--d", "3", "--sundials", "1"],
    ["verify", "--n", "3", "--d", "3", "--prime", "32001"],
    ["verify", "--n", "3", "--d", "6", "--prime", "7"],
    ["verify", "--n", "3", "--d", "3", "--trials", "0"],
    ["verify", "--d", "3"],
    ["appendix", "--n", "3", "--d", "2..5"],
    ["appendix", "--n", "4", "--d", "1..3"],
    ["replay", "--p3", "1", "3"],
    ["replay", "--pn", "3", "4"],
    ["castelnuovo", "--random", "0"],
])
def test_invalid_config_exits_2(argv, capsys):
    assert main(argv, out=io.StringIO()) == 2
    assert "error:" in capsys.readouterr().err


def test_persistent_mismatch_exits_1(tmp_path, rng):
    line = LineComponent(random_line(3, P, rng))
    path = tmp_path / "double.json"
    dump_scheme(Scheme(3, (line, line), P), path)
    code, recs = records("verify", "--scheme", str(path), "--d", "2")
    assert code == 1
    assert recs[0]["computed_dim"] == 7 and recs[0]["expected_dim"] == 4
    assert recs[0]["match"] is False


def test_verify_scheme_file(tmp_path, rng):
    X = Scheme(3, tuple(LineComponent(random_line(3, P, rng)) for _ in range(2)), P)
    path = tmp_path / "two.json"
    dump_scheme(X, path)
    code, recs = records("verify", "--scheme", str(path), "--d", "3")
    assert code == 0 and recs[0]["computed_dim"] == 20 - 8 and recs[0]["l"] == 2


def test_tsv_output():
    code, text = run("verify", "--n", "4", "--d", "2", "--sundials", "1", "--format", "tsv")
    lines = text.strip().split("\n")
    assert code == 0 and lines[0].split("\t") == FIELDS
    assert lines[1].split("\t")[FIELDS.index("match")] == "true"


def test_appendix_table_rows():
    code, recs = records("appendix", "--n", "4", "--d", "2..9")
    assert code == 0 and len(recs) == 8
    got = [(r["d"], r["t"], r["t_p"], r["r_p"], r["slack"]) for r in recs]
    assert got == [(2, 5, 2, 1, 0), (3, 8, 5, 0, 1), (4, 14, 8, 3, 0), (5, 21, 14, 0, 3),
                   (6, 30, 21, 0, 4), (7, 41, 30, 0, 5), (8, 55, 41, 2, 5), (9, 71, 55, 0, 8)]


def test_appendix_full_grid():
    code, recs = records("appendix", "--no-timing")
    assert code == 0 and len(recs) == 9 * 49
    assert all(r["a1_holds"] for r in recs)


def test_sweep_small_grid():
    code, recs = records("sweep", "--n", "3..4", "--d", "1..3", "--no-timing")
    assert code == 0 and recs
    assert all(r["match"] for r in recs)
    assert {(r["n"], r["d"]) for r in recs} == {(n, d) for n in (3, 4) for d in (1, 2, 3)}


def test_sweep_rows_reproduce_as_verify():
    _, recs = records("sweep", "--n", "4", "--d", "3", "--seed", "9", "--no-timing")
    for rec in recs[::5]:
        _, (again, *_) = records("verify", "--n", "4", "--d", "3", "--sundials", str(rec["s"]),
                                 "--lines", str(rec["l"]), "--seed", "9", "--no-timing")
        assert again["computed_dim"] == rec["computed_dim"]


def test_determinism_across_threads(monkeypatch):
    argv = ["sweep", "--n", "3..4", "--d", "2..4", "--seed", "3", "--no-timing"]
    monkeypatch.setenv("HILBERT_SUNDIAL_THREADS", "1")
    one = run(*argv)
    monkeypatch.setenv("HILBERT_SUNDIAL_THREADS", "4")
    four = run(*argv)
    assert one == four


def test_replay_commands():
    code, recs = records("replay", "--p3", "1", "2", "--seed", "1")
    assert code == 0
    (rep,) = recs
    assert rep["ok"] and rep["claims"]
    code, text = run("replay", "--pn", "4", "3", "--format", "tsv")
    assert code == 0 and len(text.strip().split("\n")) > 2


def test_castelnuovo_command():
    code, recs = records("castelnuovo", "--random", "15", "--seed", "2")
    assert code == 0 and len(recs) == 15
    assert all(r["inequality_holds"] for r in recs)


def test_family_command():
    code, recs = records("family", "--n", "3..4", "--d", "1..4")
    assert code == 0 and len(recs) == 8
    assert all(r["match"] for r in recs)


def test_parse_range():
    assert parse_range("4") == [4]
    assert parse_range("2..5") == [2, 3, 4, 5]
    assert parse_range("3,5") == [3, 5]
    with pytest.raises(argparse.ArgumentTypeError):
        parse_range("5..2")


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "hilbert_sundial", "verify", "--n", "3",
                          "--d", "2", "--sundials", "1"], capture_output=True, text=True,
                         check=False)
    assert out.returncode == 0
    assert json.loads(out.stdout)["computed_dim"] == 4


def test_seed_changes_instances():
    a = records("verify", "--n", "5", "--d", "3", "--sundials", "2", "--seed", "1")[1]
    b = records("verify", "--n", "5", "--d", "3", "--sundials", "2", "--seed", "2")[1]
    assert a[0]["computed_dim"] == b[0]["computed_dim"]
    assert np.all([r["match"] for r in a + b])
