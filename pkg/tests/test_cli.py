import csv
import io
import json
import subprocess
import sys

import pytest

from sqtri.cli import EXIT_PRECISION, EXIT_USAGE, EXIT_VERIFY, main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_generate_table():
    code, text = run("generate", "10")
    assert code == 0
    last = text.splitlines()[-1].split()
    assert last == ["10", "22619537", "15994428", "11309768", "7997214", "63955431761796"]


@pytest.mark.parametrize("method", ["recurrence", "closed", "scan"])
def test_generate_methods_agree(method):
    assert run("generate", "8", "--method", method, "--format", "csv") == run(
        "generate", "8", "--format", "csv"
    )


def test_formats_carry_the_same_values():
    _, c = run("generate", "6", "--format", "csv")
    _, j = run("generate", "6", "--format", "json")
    _, b = run("generate", "6", "--format", "bfile")
    from_csv = [int(r["a"]) for r in csv.DictReader(io.StringIO(c))]
    from_json = [r["a"] for r in json.loads(j)]
    from_bfile = [int(line.split()[1]) for line in b.splitlines()]
    assert from_csv == from_json == from_bfile == [1, 36, 1225, 41616, 1413721, 48024900]


def test_output_is_deterministic():
    assert run("ratios", "8", "--h-max", "3", "--format", "csv") == run(
        "ratios", "8", "--h-max", "3", "--format", "csv"
    )


def test_scan_and_bfile():
    code, text = run("scan", "65534", "--format", "bfile")
    assert code == 0
    assert text.splitlines()[-1] == "7 1631432881"
    code, text = run("scan", "65534", "--workers", "2", "--format", "bfile")
    assert text.splitlines()[-1] == "7 1631432881"


def test_scan_full_table():
    code, text = run("scan", "8", "--full-table", "--format", "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert code == 0 and len(rows) == 9
    assert rows[2][:2] == ["2", "3"]


def test_ratios_wide():
    code, text = run("ratios", "7", "--wide")
    assert code == 0
    assert "33.97056420609" in text and "33.97056279139" in text
    assert "0.0000480584221" in text


def test_ratios_budget_check():
    code, _ = run("ratios", "40", "--h-max", "4", "--digits", "50", "--check-budget")
    assert code == EXIT_PRECISION


def test_ratios_deviations_csv():
    code, text = run("ratios", "8", "--deviations", "--format", "csv")
    assert code == 0 and text.startswith("h,j,ratio,deviation")


def test_predict_transcribed_float():
    code, text = run("predict", "--steps", "2", "--transcribe", "--float-mode")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "a_7 ~ 1631432881.00263 -> 1631432881 verified"
    assert lines[1] == "a_8 ~ 55420693055.99960 -> 55420693056 verified"


def test_predict_json():
    code, text = run("predict", "--format", "json")
    doc = json.loads(text)
    assert code == 0 and doc[0]["rounded"] == 1631432881 and doc[0]["reliable"]


def test_predict_verification_failure_exit_code():
    code, text = run("predict", "--seed", "4")
    assert code == EXIT_VERIFY
    assert "NOT verified" in text


@pytest.mark.parametrize(
    "argv",
    [
        ("predict", "--seed", "3"),
        ("generate", "0"),
        ("intersect", "2", "3", "100"),
        ("scan", "0"),
        ("generate", "3", "--float-mode", "--digits", "20"),
        ("ratios", "6", "--format", "bfile"),
        ("generate", "3", "--digits", "5"),
        ("conjecture", "--h-max", "4", "--depth", "10"),
    ],
)
def test_usage_errors(argv):
    assert run(*argv)[0] == EXIT_USAGE


def test_precision_error_exit_code():
    code, _ = run("conjecture", "--h-max", "4", "--depth", "40", "--digits", "100")
    assert code == EXIT_PRECISION
    code, _ = run("generate", "30", "--method", "closed", "--digits", "20")
    assert code == EXIT_PRECISION


def test_intersect():
    code, text = run("intersect", "3", "5", "1e7", "--format", "bfile")
    assert code == 0
    assert text == "1 1\n2 210\n3 40755\n4 7906276\n"


def test_conjecture_json():
    code, text = run("conjecture", "--h-max", "2", "--depth", "12", "--format", "json")
    doc = json.loads(text)
    assert code == 0
    assert [lv["h"] for lv in doc["levels"]] == [1, 2]
    assert all(lv["pass"] and lv["monotone_tail"] for lv in doc["levels"])


def test_float_demo():
    code, text = run("float-demo")
    assert code == 0
    assert "UNRELIABLE" in text.splitlines()[1]
    assert text.splitlines()[2].endswith(", reliable")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sqtri", "generate", "2", "--format", "bfile"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert proc.stdout == "1 1\n2 36\n"
