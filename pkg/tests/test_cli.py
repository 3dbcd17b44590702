import json
import subprocess
import sys

import pytest

from halfsplit.cli import parse_range, parse_recurrence, run, UsageError
from halfsplit import P, T, ZERO
from oracle import P_ORACLE


def cli(*args):
    proc = subprocess.run([sys.executable, "-m", "halfsplit", *args],
                          capture_output=True)
    return proc.returncode, proc.stdout, proc.stderr


def out_json(capsys, *args):
    code = run([*args, "--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_parse_recurrence():
    assert parse_recurrence("T") == T
    assert parse_recurrence("P") == P
    assert parse_recurrence("zero(0,0,0,0)") == ZERO
    assert parse_recurrence("0,0,1,1").params == T.params
    for bad in ("Q", "1,2,3", "x(1,2,3,4", "-1,0,0,0"):
        with pytest.raises(UsageError):
            parse_recurrence(bad)


def test_parse_range():
    assert parse_range("0..8") == (0, 8)
    assert parse_range("5") == (5, 5)
    for bad in ("8..0", "a..b", "-1"):
        with pytest.raises(UsageError):
            parse_range(bad)


def test_eval_values(capsys):
    code, doc = out_json(capsys, "eval", "T", "0..8")
    assert code == 0
    assert [r["value"] for r in doc["result"]["values"]] == [0, 0, 1, 3, 6, 9, 14, 19, 25]
    code, doc = out_json(capsys, "eval", "--recurrence", "P", "0..9")
    assert [r["value"] for r in doc["result"]["values"]] == [0, 0, 0, 1, 2, 3, 5, 7, 9, 11]
    code, doc = out_json(capsys, "eval", "zero(0,0,0,0)", "100")
    assert doc["result"]["values"] == [{"n": 100, "value": 0}]
    assert doc["parameters"]["family_status"] == "unverified family member"
    assert doc["schema_version"] == 1


def test_eval_text_and_csv(capsys):
    assert run(["eval", "T", "0..8"]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == "0,0,1,3,6,9,14,19,25"
    assert run(["eval", "P", "0..3", "--format", "csv"]) == 0
    assert capsys.readouterr().out == "n,value\n0,0\n1,0\n2,0\n3,1\n"


def test_equality(capsys):
    code, doc = out_json(capsys, "equality", "P", "27")
    entry = doc["result"]["entries"][0]
    assert entry["equality_set"] == [12, 13, 14, 15, 16]
    assert entry["value"] == 109 and entry["special"]


def test_census(capsys):
    code, doc = out_json(capsys, "census", "T", "7", "4")
    assert code == 0
    cols = doc["result"]["columns"]
    assert all(c["relation"] == "tight" and c["unlucky"] for c in cols)
    code, doc = out_json(capsys, "census", "T", "12", "8")
    assert doc["result"]["counts"]["unlucky"] == 2
    assert doc["result"]["quartet"] == {"lhs_gap": 3, "column_gaps": [0, 2, 0, 1], "holds": True}


def test_special_and_groups(capsys):
    code, doc = out_json(capsys, "special", "P", "--max", "255")
    groups = [(g["first"], g["last"]) for g in doc["result"]["groups"]]
    assert groups == [(7, 7), (13, 15), (25, 31), (49, 63), (97, 127), (193, 255)]
    assert "unverified beyond" in doc["result"]["note"]
    code, doc = out_json(capsys, "groups", "P", "--max", "300")
    assert doc["result"]["group_recurrence"]["holds"]
    g3 = doc["result"]["groups"][2]
    assert [p["width"] for p in g3["profiles"]] == [3, 4, 5, 6, 5, 4, 3]


def test_parents(capsys):
    assert run(["parents", "7"]) == 0
    assert capsys.readouterr().out.splitlines() == [
        "n = 12: 6,7,5,6", "n = 13: 7,7,6,6", "n = 14: 7,8,6,7", "n = 15: 8,8,7,7",
        "n = 16: 8,9,7,8"]


def test_verify_exit_codes(capsys):
    assert run(["verify", "T", "--max", "300", "--mode", "iff"]) == 0
    assert run(["verify", "T", "--max", "2", "--mode", "iff"]) == 0
    assert run(["verify", "P", "--max", "300", "--mode", "ineq"]) == 0
    assert run(["verify", "P", "--max", "300", "--mode", "iff"]) == 1
    assert run(["verify", "0,1,0,0", "--max", "10", "--mode", "ineq"]) == 1


def test_out_file(tmp_path, capsys):
    target = tmp_path / "o.json"
    assert run(["eval", "T", "0..3", "--format", "json", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["result"]["values"][3]["value"] == 3


def test_cache_command_and_flag(tmp_path, capsys):
    path = tmp_path / "t.cache"
    assert run(["cache", "T", "save", "--max", "4096", "--cache", str(path)]) == 0
    assert run(["cache", "check", "--cache", str(path)]) == 0
    assert "F(0..4096) valid" in capsys.readouterr().out
    assert run(["eval", "T", "4096", "--cache", str(path)]) == 0
    assert run(["eval", "P", "5", "--cache", str(path)]) == 2
    path.write_text(path.read_text().replace("\n5,9\n", "\n5,8\n"))
    assert run(["cache", "check", "--cache", str(path)]) == 2


def test_cache_flag_grows_file(tmp_path):
    path = tmp_path / "p.cache"
    assert run(["eval", "P", "10", "--cache", str(path)]) == 0
    assert path.read_text().splitlines()[-1] == f"10,{P_ORACLE(10)}"
    assert run(["eval", "P", "20", "--cache", str(path)]) == 0
    assert path.read_text().splitlines()[-1].startswith("20,")


@pytest.mark.parametrize("args, code", [
    (["eval", "T", "0..8"], 0),
    (["verify", "T", "--max", "50"], 0),
    (["verify", "P", "--max", "50", "--mode", "iff"], 1),
    (["frobnicate"], 2),
    (["eval", "Q", "3"], 2),
    (["eval", "T"], 2),
    (["census", "T", "7", "9"], 2),
    (["verify", "T"], 2),
    (["eval", "0,0,0,4611686018427387904", "0..6"], 3),
    (["verify", "0,0,0,4611686018427387904", "--max", "10"], 3),
])
def test_exit_code_contract_black_box(args, code):
    assert cli(*args)[0] == code


def test_unbounded_values(capsys):
    assert run(["eval", "0,0,0,4611686018427387904", "4", "--max-value", "none"]) == 0
    assert "= 9223372036854775808" in capsys.readouterr().out


@pytest.mark.parametrize("fmt", ["json", "csv", "text"])
def test_byte_identical_runs(fmt):
    args = ["verify", "P", "--max", "200", "--mode", "ineq", "--format", fmt]
    a, b = cli(*args), cli(*args)
    assert a[0] == b[0] == 0
    if fmt != "text":  # text carries the elapsed time
        assert a[1] == b[1]
    args = ["census", "P", "27", "12", "--format", fmt]
    assert cli(*args)[1] == cli(*args)[1]


def test_jobs_do_not_change_output():
    base = ["special", "P", "--max", "600", "--format", "json"]
    assert cli(*base)[1] == cli(*base, "--jobs", "3")[1]
