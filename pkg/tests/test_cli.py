import csv
import io
import json

import pytest

from alcove.cli import main
from alcove.fusion import FusionTable

A2 = ["--family", "A", "--rank", "2", "--ell", "5"]


@pytest.fixture(autouse=True)
def cache(tmp_path, monkeypatch):
    monkeypatch.setenv("ALCOVE_CACHE", str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_fuse_text(capsys):
    assert run(capsys, *A2, "fuse", "--lhs", "1,0", "--rhs", "0,1") == (0, "nu=0,0 c=1\nnu=1,1 c=1", "")


def test_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "fuse", *A2, "--lhs", "1,0", "--rhs", "0,1", "--format", "json")
    assert code == 0 and json.loads(out) == [{"nu": "0,0", "c": 1}, {"nu": "1,1", "c": 1}]


def test_formats_agree(capsys):
    args = (*A2, "fusion-table")
    _, text, _ = run(capsys, "--format", "text", *args)
    _, csv_out, _ = run(capsys, "--format", "csv", *args)
    text_rows = [dict(kv.split("=") for kv in line.split()) for line in text.splitlines()]
    csv_rows = list(csv.DictReader(io.StringIO(csv_out)))
    assert text_rows == csv_rows and len(text_rows) > 36


def test_fusion_table_json_is_cache_serialization(capsys, cache):
    code, out, _ = run(capsys, "--format", "json", *A2, "fusion-table")
    assert code == 0
    table = FusionTable.from_json(out)
    assert (table.family, table.rank, table.ell) == ("A", 2, 5)
    assert (cache / "A2_ell5.json").read_text() == out


def test_reduce(capsys):
    assert run(capsys, *A2, "reduce", "--weight", "3,3")[:2] == (0, "x=s0 lambda=0,0 sign=-1 len=1")
    code, out, _ = run(capsys, *A2, "--format", "json", "reduce", "--weight", "5,0")
    assert json.loads(out) == [{"x": "s0s2", "lambda": "2,0", "sign": 1, "len": 2}]
    code, out, _ = run(capsys, *A2, "reduce", "--weight", "3,0")
    assert code == 0 and out.startswith("singular")


def test_regpart(capsys):
    code, out, _ = run(capsys, *A2, "regpart", "L(s0;1,1) * L(s0;1,1)")
    assert (code, out) == (0, "M(0,0) + L(0,0) + M(1,1) + L(1,1)")
    code, out, _ = run(capsys, *A2, "--format", "json", "regpart", "L(s0s1) ⊗ L(s0s2)")
    assert json.loads(out) == [{"label": "L(0,0)", "mult": 1}, {"label": "L(s0s1s2s1;0,0)", "mult": 1}]


def test_gfd_and_profile(capsys):
    assert run(capsys, *A2, "gfd", "L(s0s2w1) * Delta(s0)")[:2] == (0, "gfd=3 strongly_regular=true")
    code, out, _ = run(capsys, *A2, "profile", "Delta(s0;1,0)")
    assert code == 0 and out.splitlines()[-1] == "1: = T(1,0); summands among 1 weights"


def test_info(capsys):
    code, out, _ = run(capsys, *A2, "info")
    assert code == 0 and "omega w1: 2,0" in out and "alcove_weights: 0,0 0,1 0,2 1,0 1,1 2,0" in out


def test_verify(capsys):
    code, out, _ = run(capsys, *A2, "verify")
    assert code == 0 and out.count("PASS") == 6


@pytest.mark.parametrize("argv", [
    ["fuse", "--lhs", "0,0", "--rhs", "0,0"],                       # missing --family etc.
    [*A2, "fuse", "--lhs", "1", "--rhs", "0,0"],                    # wrong weight length
    ["--family", "D", "--rank", "2", "--ell", "5", "info"],         # invalid root system
    [*A2, "regpart", "M(s0) * L(e)"],                               # parse error
    [*A2, "nonsense"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


@pytest.mark.parametrize("argv", [
    [*A2, "regpart", "L(s0) * L(s0s1)"],                             # no base datum
    [*A2, "fuse", "--lhs", "3,0", "--rhs", "0,0"],                  # outside the alcove
    ["--family", "B", "--rank", "2", "--ell", "6", "fusion-table"],  # inadmissible ell
    [*A2, "gfd", "T(1,1)"],
])
def test_domain_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and err.startswith("alcove:") and out == ""


def test_rules_file(capsys, tmp_path):
    path = tmp_path / "rules.json"
    path.write_text(json.dumps({"family": "A", "rank": 2, "rules": [
        {"x": "s0", "y": "s0s1", "out": [{"kind": "Simple", "w": "s0s1s2s1"}]}]}))
    code, out, _ = run(capsys, *A2, "--rules", str(path), "regpart", "L(s0) * L(s0s1)")
    assert (code, out) == (0, "L(s0s1s2s1;0,0)")
