import json
from pathlib import Path

import pytest

from sigmadecay.cli import main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_roots(capsys):
    code, out, _ = run(capsys, "roots", "--sigma", "1", "--delta", "0.25", "--xi", "1")
    assert code == 0
    assert "lambda1 = -0.5+0.8660254038j" in out and "degenerate = False" in out


def test_rates_theorem_example(capsys):
    code, out, _ = run(capsys, "rates", "--family", "thm", "--sigma", "1", "--delta", "0.25",
                       "--n", "2", "--m", "1.5")
    assert code == 0
    solution = [ln for ln in out.splitlines() if ln.startswith("solution")]
    assert solution and all("-0.2222" in ln for ln in solution)


def test_rates_single_pair_and_violation(capsys):
    code, out, _ = run(capsys, "rates", "--family", "prop", "--sigma", "1", "--delta", "0.25",
                       "--n", "1", "--m", "2", "--a", "0", "--j", "0")
    assert code == 0 and "m must lie in [1, 2)" in out


def test_critical(capsys):
    code, out, _ = run(capsys, "critical", "--n", "2", "--m", "1", "--sigma", "1", "--delta", "0.25")
    assert code == 0 and out.strip() == "2.3333"


def test_pitt_parseval(capsys):
    code, out, _ = run(capsys, "pitt", "--r1", "2", "--r2", "2", "--s1", "0", "--s2", "0", "--n", "1")
    assert code == 0 and out.strip() == "admissible; ratio 1.000 (Parseval)"


def test_pitt_balanced_bump(capsys):
    code, out, _ = run(capsys, "pitt", "--r1", "2", "--r2", "1.5", "--s2", "0.5", "--n", "2",
                       "--family", "bump", "--verbose")
    assert code == 0 and out.startswith("admissible; ratio")
    assert len(out.strip().splitlines()) == 4


@pytest.mark.parametrize("argv", [
    ("pitt", "--r1", "2", "--r2", "1.5", "--s1", "1", "--s2", "0.5", "--n", "2"),
    ("roots", "--sigma", "1", "--delta", "0.25", "--xi", "1", "--bogus"),
    ("rates", "--family", "thm", "--sigma", "1", "--delta", "0.75", "--n", "2", "--m", "1.5"),
    ("critical", "--n", "1", "--m", "1.5", "--sigma", "1", "--delta", "0.4"),
    ("evolve", "--config", "/nonexistent/config.ini"),
    ("frobnicate",),
])
def test_usage_errors_exit_2_with_one_line(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert len(err.strip().splitlines()) == 1 and err.startswith("sigmadecay: error:")


def test_evolve_and_report(tmp_path, capsys):
    out_csv = tmp_path / "r.csv"
    code, out, _ = run(capsys, "evolve", "--config", str(CONFIGS / "default.ini"), "--out", str(out_csv))
    assert code == 0
    assert out_csv.read_text().startswith("observable,t_window,slope,stderr,theory,verdict\n")
    assert "pass" in out

    out_json = tmp_path / "r.json"
    code, _, _ = run(capsys, "evolve", "--config", str(CONFIGS / "default.ini"),
                     "--out", str(out_json), "--format", "json")
    assert code == 0
    assert json.loads(out_json.read_text())["provenance"]["config"]["model"]["sigma"] == "1.0"

    code, out, _ = run(capsys, "report", "--in", str(out_json), "--format", "csv")
    assert code == 0 and out == out_csv.read_text()


def test_evolve_failure_exit_code(tmp_path, capsys):
    text = (CONFIGS / "u0_saturation_1d.ini").read_text()
    text = text.replace("points = 65536\nhalf_width = 25735.93", "points = 4096\nhalf_width = 1608.5")
    text = text.replace("check = saturation", "check = bound\ntolerance = -0.3")
    cfg = tmp_path / "c.ini"
    cfg.write_text(text)
    code, _, _ = run(capsys, "evolve", "--config", str(cfg), "--out", str(tmp_path / "r.csv"))
    assert code == 1
