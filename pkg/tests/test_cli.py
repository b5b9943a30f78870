import csv
import io
import json

import pytest

from sboxkit import corpus
from sboxkit.affine import AffineTransform, random_affine
from sboxkit.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_json(capsys):
    code, out, _ = run(["analyze", "--builtin", "ascon", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    nl = next(m for m in data["metrics"] if m["id"] == "nl")
    assert nl["value"] == 8


def test_analyze_deterministic_without_timestamp(capsys):
    argv = ["analyze", "--builtin", "gift", "--format", "json", "--no-timestamp"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b and json.loads(a)["timestamp"] is None


def test_analyze_props_and_modulus(capsys):
    code, out, _ = run(["analyze", "--builtin", "present", "--props", "ip,nl", "--format", "csv",
                        "--field-modulus", "0x19"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert [r[0] for r in rows[1:]] == ["nl", "ip"]


def test_analyze_input_file(tmp_path, capsys):
    path = tmp_path / "box.txt"
    path.write_text("0xE 4 0xD 1 2 0xF 0xB 8 3 0xA 6 0xC 5 9 0 7\n")
    code, out, _ = run(["analyze", "--input", str(path), "--props", "du"], capsys)
    assert code == 0 and " 8" in out


def test_compare_csv(capsys):
    code, out, _ = run(["compare", "--builtin", "ascon", "--builtin", "present",
                        "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["metric", "ascon", "present"]
    assert len(rows) == 25


def test_verify_skinny(capsys):
    code, out, _ = run(["verify", "--builtin", "skinny8"], capsys)
    assert code == 0
    lines = out.split("\n")
    for name in ("walsh", "act", "ddt", "bct"):
        assert f"PASS {name}" in lines
    assert "FAIL" not in out


def test_bounds(capsys):
    code, out, _ = run(["bounds", "--n", "8"], capsys)
    assert code == 0 and "0 <= nl < 120" in out
    code, out, _ = run(["bounds", "--n", "4", "--format", "json"], capsys)
    assert json.loads(out)["n"] == 4


def test_list_builtins(capsys):
    code, out, _ = run(["list-builtins"], capsys)
    assert code == 0
    assert [l.split()[0] for l in out.splitlines()] == list(corpus.BUILTIN_IDS)
    assert "doi:" in out


def test_transform_seed_and_file(tmp_path, capsys):
    saved = tmp_path / "t.json"
    code, out, _ = run(["transform", "--builtin", "present", "--seed", "5",
                        "--save-transform", str(saved)], capsys)
    assert code == 0
    assert AffineTransform.from_json(saved.read_text()) == random_affine(4, seed=5)
    code, again, _ = run(["transform", "--builtin", "present", "--transform", str(saved)], capsys)
    assert again == out


def test_transform_invariance(capsys):
    code, out, _ = run(["transform", "--builtin", "gift", "--seed", "1", "--invariance"], capsys)
    assert code == 0 and "CHANGED" not in out and "preserved" in out


def test_out_flag(tmp_path, capsys):
    dest = tmp_path / "r.txt"
    code, out, _ = run(["analyze", "--builtin", "ascon", "--out", str(dest)], capsys)
    assert code == 0 and out == "" and "ascon" in dest.read_text()


@pytest.mark.parametrize("argv", [
    [],
    ["analyze"],
    ["analyze", "--builtin", "aes"],
    ["analyze", "--builtin", "ascon", "--props", "bogus"],
    ["analyze", "--builtin", "ascon", "--format", "pdf"],
    ["analyze", "--builtin", "ascon", "--field-modulus", "0x15"],
    ["compare", "--builtin", "ascon"],
    ["transform", "--builtin", "ascon"],
    ["analyze", "--input", "/nonexistent/box.txt"],
])
def test_usage_errors_exit_one(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 1


def test_precondition_exit_two(tmp_path, capsys):
    path = tmp_path / "box.txt"
    path.write_text("0 0 1 2\n")
    code, out, err = run(["analyze", "--input", str(path), "--width", "2", "--props", "bu,du"],
                         capsys)
    assert code == 2
    assert "not applicable" in out and "precondition failed: bu" in err


def test_all_props_tolerate_inapplicable(tmp_path, capsys):
    path = tmp_path / "box.txt"
    path.write_text("0 0 1 2\n")
    code, _, _ = run(["analyze", "--input", str(path), "--width", "2"], capsys)
    assert code == 0
