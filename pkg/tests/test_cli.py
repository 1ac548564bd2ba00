"""The command line: reports, formats, determinism, exit codes."""

import json

import pytest

from contactconics import IntegrityError, cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_main_theorem_table(capsys):
    code, out, _ = run(capsys, "main-theorem")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["type", "1", "2", "3", "4", "5", "6"]
    assert "case I" in lines[1] and lines[1].split()[-6:] == ["3", "4", "4", "1", "1", "1"]
    assert lines[2].split()[-6:] == ["1", "2", "2", "0", "1", "0"]
    assert lines[3].split()[-6:] == ["0", "2", "0", "1", "0", "0"]
    assert lines[4].split()[-6:] == ["1", "0", "2", "0", "0", "1"]


def test_enumerate_prints_the_type_two_classes(capsys):
    code, out, _ = run(capsys, "enumerate", "--case", "I", "--type", "2")
    assert code == 0
    assert "4 conic classes" in out
    for label in (
        "[1]P1 + [-2]P2 + [-1]P3",
        "[1]P1 + [-2]P2 + [1]P3",
        "[2]P1 + [-1]P2 + [-1]P3",
        "[2]P1 + [-1]P2 + [1]P3",
    ):
        assert label in out


def test_enumerate_unrealizable_type(capsys):
    code, out, _ = run(capsys, "enumerate", "--case", "III", "--type", "1")
    assert code == 0
    assert "not realizable" in out


def test_group_op_double(capsys):
    code, out, _ = run(capsys, "group-op", "double", "P1")
    assert code == 0
    assert "x = t^2 + 3/2*t" in out


def test_group_op_add_matches_difference_relation(capsys):
    # P0 = P2 - P1, so P0 + P1 recovers P2 exactly.
    code, out, _ = run(capsys, "group-op", "add", "P0", "P1")
    assert code == 0
    assert "x = t" in out.splitlines()
    code, out, _ = run(capsys, "group-op", "negate", "P3")
    assert code == 0
    assert "x = 1/2*t - 1/2" in out


def test_height_command(capsys):
    code, out, _ = run(capsys, "height", "P1", "P2")
    assert code == 0
    assert out.strip() == "<P1, P2> = 1/6"


def test_verify_example_lists_identities(capsys):
    code, out, _ = run(capsys, "verify-example")
    assert code == 0
    assert out.count("ok: ") == 32
    assert out.strip().endswith("verified 32 identities")


def test_fibers_table(capsys):
    code, out, _ = run(capsys, "fibers")
    assert code == 0
    assert "t = 0: type IV, 3 components, euler 4" in out
    assert "euler total: 12" in out


def test_weak_contact_true_with_type(capsys):
    code, out, _ = run(capsys, "weak-contact", "--quartic", "phiQ", "--conic", "Cbar")
    assert code == 0
    assert "weak contact: true" in out
    assert "type: 5" in out


def test_weak_contact_false_with_parity_certificate(capsys):
    code, out, _ = run(capsys, "weak-contact", "--quartic", "phiQ", "--conic", "x = t^2+1")
    assert code == 0
    assert "weak contact: false" in out
    assert "(odd)" in out
    assert "audit: affine 6 + infinity 2 = 8" in out


def test_cremona_regression(capsys):
    code, out, _ = run(capsys, "cremona", "X*Z - T^2")
    assert code == 0
    assert "image:" in out


def test_zariski_report(capsys):
    code, out, _ = run(capsys, "zariski", "--pair", "B11-B21")
    assert code == 0
    assert "pair B11-B21" in out
    assert "[pass]" in out and "FAIL" not in out
    assert "cited, not re-proved" in out


def test_fingerprint_pair_comparison(capsys):
    code, out, _ = run(capsys, "fingerprint", "B11", "B21")
    assert code == 0
    assert "fingerprints equal: true" in out


def test_structured_output_is_sorted_json(capsys):
    code, out, _ = run(capsys, "height", "P3", "--format", "structured")
    assert code == 0
    payload = json.loads(out)
    assert payload == {"command": "height", "left": "P3", "right": "P3", "value": "1/2"}
    assert list(payload) == sorted(payload)


def test_reports_are_byte_identical_across_runs(capsys):
    first = run(capsys, "zariski", "--pair", "D0-D1")
    second = run(capsys, "zariski", "--pair", "D0-D1")
    assert first == second
    third = run(capsys, "enumerate", "--case", "IV", "--type", "3", "--format", "structured")
    fourth = run(capsys, "enumerate", "--case", "IV", "--type", "3", "--format", "structured")
    assert third == fourth


def test_usage_errors_exit_one(capsys):
    code, _, err = run(capsys, "group-op", "add", "P1")
    assert code == 1 and "usage error" in err
    code, _, err = run(capsys, "enumerate", "--case", "V", "--type", "1")
    assert code == 1
    code, _, err = run(capsys, "cremona")
    assert code == 1


def test_parse_errors_exit_one(capsys):
    code, _, err = run(capsys, "cremona", "X*Z - T^")
    assert code == 1 and "parse error" in err
    code, _, err = run(capsys, "weak-contact", "--conic", "x = ")
    assert code == 1


def test_precondition_errors_exit_two(capsys):
    code, _, err = run(capsys, "zariski", "--pair", "B11-B99")
    assert code == 2 and "precondition error" in err
    code, _, err = run(capsys, "fingerprint", "B99")
    assert code == 2
    code, _, err = run(capsys, "cremona", "X*Z - T^2", "--triangle", "T; X; T + X")
    assert code == 2


def test_integrity_errors_exit_three(capsys, monkeypatch):
    def broken():
        raise IntegrityError("worked example: tampered")

    monkeypatch.setattr(cli.fixtures, "load_worked_example", broken)
    code, _, err = run(capsys, "verify-example")
    assert code == 3 and "integrity error" in err
