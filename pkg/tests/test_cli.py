import csv
import io
import json
import subprocess
import sys

import pytest

from gaborstep.cli import main

G45 = "[[0,2,1],[2,3,-1]]"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cc_example(capsys):
    code, out, _ = run(capsys, "cc", "--g", G45, "--a", "1", "--b", "1")
    js = json.loads(out)
    assert code == 0
    assert (js["frame_lower"], js["frame_upper"], js["verdict"]) == ("1", "5", "FrameCertified")


def test_frameset_example(capsys):
    code, out, _ = run(capsys, "frameset", "--exps", "0,1,2")
    js = json.loads(out)
    assert code == 0 and js["verdict"] == "NotFrame"
    code, out, _ = run(capsys, "frameset", "--exps", "0,1,3")
    js = json.loads(out)
    assert js["verdict"] == "Frame" and js["B_enclosure"] == [9.0, 9.0]
    assert js["A_enclosure"][1] - js["A_enclosure"][0] < 1e-8


def test_abc_example(capsys):
    code, out, _ = run(capsys, "abc", "--a", "9/10", "--c", "3")
    js = json.loads(out)
    assert (js["status"], js["rule"]) == ("NotFrame", "INTEGER_C")
    code, out, _ = run(capsys, "abc", "--a", "1/2", "--b", "2", "--c", "3/4")
    assert json.loads(out)["reduced"] == {"a": "1", "b": "1", "c": "3/2"}


def test_gk_csv(capsys):
    code, out, _ = run(capsys, "gk", "--g", G45, "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {(r["k"], r["value"]) for r in rows} == {("-2", "-1"), ("0", "3"), ("2", "-1")}


def test_energy(capsys):
    code, out, _ = run(capsys, "energy", "--g", "[[0,3,1]]", "--f",
                       "[[0,1,1],[1,2,\"-1/2\"],[2,3,\"-1/2\"],[3,4,1],[4,5,\"-1/2\"],[5,6,\"-1/2\"]]")
    js = json.loads(out)
    assert js["energy"] == "5/2" and js["ratio"] == "5/6"


def test_chart_csv(capsys):
    code, out, _ = run(capsys, "chart", "--a-grid", "1/2", "--c-grid", "1/2:5/2:1/2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["status"] for r in rows] == ["Frame", "Frame", "Unknown", "NotFrame"]
    assert rows[-1]["rule"] == "INTEGER_C"


def test_walnut_and_fundamental(capsys):
    code, out, _ = run(capsys, "walnut", "--g", G45)
    js = json.loads(out)
    assert (js["band_low"], js["band_high"]) == (-2, 2)
    code, out, _ = run(capsys, "fundamental-check", "--g", G45, "--a", "1/2", "--f", "[[0,1,1]]")
    assert json.loads(out)["agree"] is True
    code, out, _ = run(capsys, "fundamental-check", "--a", "0.6", "--b", "1", "--approx", "--trials", "5")
    js = json.loads(out)
    assert js["max_err_identity"] < 1e-10 and js["trials"] == 5


def test_witness_tables(capsys):
    code, out, _ = run(capsys, "witness", "--family", "case2", "--c", "3", "--n-list", "2,4", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [(r["energy"], r["ratio"]) for r in rows] == [("5/2", "5/6"), ("5/2", "5/12")]
    code, out, _ = run(capsys, "witness", "--family", "riesz", "--c", "3", "--n-list", "1,5", "--jobs", "2")
    assert [r["norm_sq"] for r in json.loads(out)] == ["2", "2"]
    code, out, _ = run(capsys, "witness", "--family", "periodization", "--g", "[[0,1,1],[1,2,-1]]",
                       "--n-list", "3")
    assert json.loads(out)[0]["norm_sq"] == "4"
    code, _, err = run(capsys, "witness", "--family", "case1", "--c", "3")
    assert code == 2 and "case2" in err


def test_rejected_input(capsys):
    code, _, err = run(capsys, "cc", "--g", "[[0,3")
    assert code == 2 and "malformed" in err
    code, _, err = run(capsys, "cc", "--g", "[[0,3,1.5]]")
    assert code == 2
    code, _, err = run(capsys, "cc", "--g", "[[0,3,1]]", "--a", "0.5")
    assert code == 2
    code, _, _ = run(capsys, "cc", "--g", "[[0,3,1.5]]", "--approx")
    assert code == 0
    code, _, _ = run(capsys, "frameset", "--exps", "3,1")
    assert code == 2
    code, _, _ = run(capsys, "cc", "--g", "{}")
    assert code == 2


def test_strict_mode(capsys):
    assert run(capsys, "cc", "--g", "[[0,3,1]]", "--strict")[0] == 3
    assert run(capsys, "cc", "--g", "[[0,3,1]]")[0] == 0
    assert run(capsys, "abc", "--a", "1/2", "--c", "5/2", "--strict")[0] == 3
    assert run(capsys, "cc", "--g", G45, "--strict")[0] == 0


def test_unknown_subcommand(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["plot"])
    assert exc.value.code == 2


@pytest.mark.parametrize("argv", [
    ["gk", "--g", G45],
    ["cc", "--g", G45],
    ["frameset", "--exps", "0,1,3"],
    ["chart", "--a-grid", "1/4:1:1/4", "--c-grid", "1/2:3:1/2"],
    ["walnut", "--g", G45, "--column", "1"],
    ["witness", "--family", "two-overlap", "--g", "[[0,2,1]]", "--n-list", "2,3"],
    ["fundamental-check", "--a", "3/4", "--b", "1", "--trials", "3"],
])
def test_output_is_deterministic_and_valid_json(capsys, argv):
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    js = json.loads(first)
    assert json.loads(json.dumps(js, sort_keys=True, indent=2)) == js


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "gaborstep", "abc", "--a", "2/5", "--c", "5/2"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["rule"] == "JANSSEN_4"
