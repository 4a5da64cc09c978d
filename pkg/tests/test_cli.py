"""CLI surface: deterministic output, exit codes, golden replay."""

import json

import pytest

from logderiv.arrangement import load
from logderiv.cli import main
from logderiv.fixtures import fixture_path


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture(scope="module")
def boolean3():
    return str(fixture_path("boolean3.arr"))


def test_exp_output_is_byte_identical_across_runs(capsys, boolean3):
    code1, out1, _ = run(capsys, "exp", boolean3)
    code2, out2, _ = run(capsys, "exp", boolean3)
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["exp"] == [1, 1, 1]
    assert payload["exp0"] == [1, 1]


def test_timings_flag_adds_only_a_timing_block(capsys, boolean3):
    _, plain, _ = run(capsys, "exp", boolean3)
    _, timed, _ = run(capsys, "exp", boolean3, "--timings")
    a, b = json.loads(plain), json.loads(timed)
    assert "timings" not in a
    block = b.pop("timings")
    assert a == b
    assert set(block) == {"total"}


def test_mode_filter_drops_the_other_exponent_list(capsys, boolean3):
    _, out_d, _ = run(capsys, "exp", boolean3, "--mode", "D")
    _, out_d0, _ = run(capsys, "exp", boolean3, "--mode", "D0")
    d, d0 = json.loads(out_d), json.loads(out_d0)
    assert "exp" in d and "exp0" not in d
    assert "exp0" in d0 and "exp" not in d0


def test_resolution_flag_reports_both_modules(capsys, boolean3):
    _, out, _ = run(capsys, "exp", boolean3, "--resolution")
    block = json.loads(out)["resolution"]
    assert block["D"]["f0"] == [1, 1, 1]
    assert block["D"]["f1"] == []
    assert block["D0"]["f0"] == [1, 1]


def test_missing_file_exits_one_with_error_line(capsys):
    code, out, err = run(capsys, "exp", "/no/such/file.arr")
    assert code == 1
    assert out == ""
    assert err.startswith("error:")


def test_construction_output_parses_back(tmp_path, capsys, boolean3):
    code, out, _ = run(capsys, "cone", boolean3, "-n", "2")
    assert code == 0
    path = tmp_path / "coned.arr"
    path.write_text(out)
    B = load(path)
    assert B.ell == 5 and B.size == 5


def test_restrict_rejects_a_bad_index(capsys, boolean3):
    code, _, err = run(capsys, "restrict", boolean3, "--index", "7")
    assert code == 1
    assert "index" in err


def test_out_flag_writes_the_same_bytes(tmp_path, capsys, boolean3):
    _, stream, _ = run(capsys, "lattice", boolean3)
    target = tmp_path / "lattice.json"
    code, out, _ = run(capsys, "lattice", boolean3, "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text() == stream


def test_pair_expect_mismatch_exits_two(capsys, boolean3):
    code, out, _ = run(capsys, "pair", boolean3, boolean3, "--expect", "ziegler_pair")
    assert code == 2
    assert json.loads(out)["verdict"] == "same_resolution"


def test_generic_check_reports_both_verdicts(capsys):
    a1 = str(fixture_path("ziegler_a1.arr"))
    code, out, _ = run(capsys, "generic-check", a1, "--hyperplane", "13 171 232")
    payload = json.loads(out)
    assert code == 0
    assert payload["combinatorial"] is True
    assert payload["algebraic"] is True


def test_golden_replay_subset(capsys):
    code, out, _ = run(capsys, "verify-goldens", "--only", "boolean3")
    assert code == 0
    assert "PASS" in out
    assert "0 failed" in out


def test_golden_replay_full_table(capsys):
    code, out, _ = run(capsys, "verify-goldens")
    lines = [l for l in out.strip().splitlines()]
    assert code == 0, out
    assert all(l.startswith("PASS") for l in lines[:-1])
    assert "0 failed" in lines[-1]
    assert len(lines) - 1 >= 12
