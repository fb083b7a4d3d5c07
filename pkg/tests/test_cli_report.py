import csv
import io
import json
import math
from pathlib import Path

import pytest

from redheffer.cli_report import config_from_args, main, parse_nu_range, render, run_suite
from redheffer.cli_report import UsageError

GOLDEN = Path(__file__).parent / "golden"


def _close(a, b):
    if isinstance(a, dict):
        return a.keys() == b.keys() and all(_close(a[k], b[k]) for k in a)
    if isinstance(a, list):
        return len(a) == len(b) and all(_close(x, y) for x, y in zip(a, b))
    if isinstance(a, float) and isinstance(b, float):
        return math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-15)
    return a == b


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_matches_golden(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("REDHEFFER_CACHE_DIR", str(tmp_path))
    code, out, _ = _run(capsys, "check", "--theorem", "T1", "--nu", "0.5", "--grid", "19")
    assert code == 0
    got, want = json.loads(out), json.loads((GOLDEN / "check_t1_half.json").read_text())
    got.pop("versions"), want.pop("versions")
    assert _close(got, want)


def test_conjecture_csv_matches_golden(capsys):
    code, out, _ = _run(capsys, "conjecture", "--nu", "-0.5", "--m-max", "3", "--format", "csv")
    assert code == 0
    got = list(csv.reader(io.StringIO(out)))
    want = list(csv.reader(io.StringIO((GOLDEN / "conjecture_minus_half.csv").read_text())))
    assert got[0] == want[0] == ["nu", "m", "ratio", "jsq", "margin", "status"]
    for g, w in zip(got[1:], want[1:]):
        assert g[:2] == w[:2] and g[5] == w[5]
        assert all(math.isclose(float(a), float(b), rel_tol=1e-12) for a, b in zip(g[2:5], w[2:5]))


def test_invalid_order_exit_code(capsys):
    code, _, err = _run(capsys, "eval", "--nu", "-1.5", "--x", "1")
    assert code == 2 and "nu must exceed -1" in err


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check"])
    assert exc.value.code == 2
    capsys.readouterr()
    assert main(["conjecture", "--nu-range", "1:0:0.1"]) == 2


def test_nu_range_parsing():
    assert parse_nu_range("-0.9:-0.5:0.2") == pytest.approx((-0.9, -0.7, -0.5))
    with pytest.raises((UsageError, ValueError)):
        parse_nu_range("a:b")
    cfg = config_from_args(["conjecture", "--nu-range", "-0.9:-0.7:0.1", "--m-max", "2"])
    assert cfg.nus == pytest.approx((-0.9, -0.8, -0.7))


def test_eval_closed_form(capsys):
    code, out, _ = _run(capsys, "eval", "--function", "jnorm", "--nu", "0.5", "--x", "1.0")
    assert code == 0
    rep = json.loads(out)["reports"][0]
    assert rep["value"] == pytest.approx(math.sin(1.0), rel=1e-14)


def test_zeros_subcommand(capsys, tmp_path):
    code, out, _ = _run(capsys, "zeros", "--nu", "0.5", "--count", "5", "--cache-dir", str(tmp_path))
    assert code == 0
    reps = json.loads(out)["reports"]
    assert [r["n"] for r in reps] == [1, 2, 3, 4, 5]
    assert all(abs(0.5 * (r["lo"] + r["hi"]) - r["n"] * math.pi) < 1e-12 for r in reps)


def test_output_file_and_timing(tmp_path, capsys):
    path = tmp_path / "sub" / "t.json"
    assert main(["rayleigh", "--nu", "0", "--m-max", "3", "--output", str(path), "--timing"]) == 0
    doc = json.loads(path.read_text())
    assert "elapsed_s" in doc["timing"]
    assert main(["rayleigh", "--nu", "0", "--m-max", "3"]) == 0
    assert "timing" not in json.loads(capsys.readouterr().out)


def test_determinism_and_warm_cache(tmp_path):
    argv = ["check", "--theorem", "T2", "--nu", "0", "--nu", "2", "--grid", "29", "--cache-dir", str(tmp_path)]
    cold = render(run_suite(config_from_args(argv)))
    warm = render(run_suite(config_from_args(argv)))
    nocache = render(run_suite(config_from_args(argv[:-2] + ["--no-cache"])))
    assert cold == warm
    assert json.loads(cold)["reports"] == json.loads(nocache)["reports"]


def test_report_csv_columns(capsys):
    code, out, _ = _run(capsys, "check", "--theorem", "ZHU", "--nu", "0", "--r", "1", "--format", "csv", "--grid", "9")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 1 and rows[0]["theorem"] == "ZHU" and rows[0]["status"] == "passed"
