import json
import subprocess
import sys

import pytest

from cyclicspreads.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check(capsys):
    code, out, _ = run(capsys, "check", "--q", "5", "--poly", "x^3-3x+1", "--pp")
    rec = json.loads(out)
    assert code == 0 and rec["schema"] == "1"
    assert rec["irreducible"] and rec["condition1"] and rec["fl_permutation"]


def test_check_failure_has_witness(capsys):
    code, out, _ = run(capsys, "check", "--q", "5", "--poly", "x^3 - [1,1]")
    rec = json.loads(out)
    assert code == 1 and rec["condition1"] is False
    assert set(rec["witness"]) == {"z", "w"}


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--q", "5", "--poly", "x^3-3x+1")
    rec = json.loads(out)
    assert code == 0
    assert (rec["family"], rec["delta"], rec["alpha"]) == ("P", "[0,0]", "[4,0]")


def test_classes(capsys, tmp_path):
    png = tmp_path / "classes.png"
    code, out, _ = run(capsys, "classes", "--q", "5", "--plot", str(png))
    rec = json.loads(out)
    assert code == 0 and [c["size"] for c in rec["classes"]] == [120, 120]
    assert rec["classes"][0]["rep_delta"] == "[0,0]"
    assert png.stat().st_size > 0


def test_counts_csv_and_plot(capsys, tmp_path):
    png = tmp_path / "counts.png"
    code, out, _ = run(capsys, "counts", "--q", "5", "--format", "csv", "--plot", str(png))
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "item,observed,expected,pass"
    assert "total,240,240,True" in lines
    assert png.read_bytes()[:4] == b"\x89PNG"


def test_equiv(capsys):
    code, out, _ = run(capsys, "equiv", "--q", "5", "x^3-3x+1", "x^3+3x^2-1")
    assert code == 0 and json.loads(out)["equivalent"]
    # representatives of the two classes
    code, out, _ = run(capsys, "equiv", "--q", "5", "x^3-3x+1", "x^3 + [0,4]*x^2 + [2,4]*x - 1")
    assert code == 1 and json.loads(out)["result"] == "inequivalent"


def test_verify_spread_and_export(capsys, tmp_path):
    csvp = tmp_path / "lines.csv"
    code, out, _ = run(capsys, "verify-spread", "--q", "5", "--poly", "x^3-3x+1",
                       "--export-lines", str(csvp))
    rec = json.loads(out)
    assert code == 0 and rec["valid"] and rec["lines"] == 651 and rec["group_order"] == 2604
    assert len(csvp.read_text().splitlines()) == 651
    code, out, _ = run(capsys, "verify-spread", "--q", "5", "--poly", "x^3 - [1,1]")
    rec = json.loads(out)
    assert code == 1 and not rec["valid"] and rec["cover_count"] >= 2


def test_families(capsys):
    code, out, _ = run(capsys, "families", "--q", "5")
    rec = json.loads(out)
    assert code == 0 and len(rec["pdelta1_c1"]) == 16 and rec["g3"]["classes_hit"] == [0]


def test_thresholds_text(capsys):
    assert run(capsys, "thresholds", "--degree", "4", "--ideal-points", "2", "--format", "text")[1].strip() == "47"
    assert run(capsys, "thresholds", "--degree", "3", "--ideal-points", "3", "--format", "text")[1].strip() == "13"


@pytest.mark.parametrize("argv", [
    ["counts", "--q", "4"],
    ["counts", "--q", "6"],
    ["counts", "--q", "17"],
    ["check", "--q", "5", "--poly", "x^3+*x"],
    ["check", "--poly", "x"],
    ["equiv", "--q", "5", "x^3-3x+1"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err


def test_parse_error_is_annotated(capsys):
    _, _, err = run(capsys, "check", "--q", "5", "--poly", "x^3+*x")
    assert "position" in err and "^" in err


def test_out_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "classify", "--q", "7", "--poly", "x^3-3x+1", "--out", str(path))
    assert out == "" and json.loads(path.read_text())["schema"] == "1"


def test_output_is_deterministic():
    argv = [sys.executable, "-m", "cyclicspreads", "classes", "--q", "7", "--seed", "3"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a
