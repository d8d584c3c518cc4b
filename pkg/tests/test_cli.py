import json
import subprocess
import sys

import pytest

from gaussmoments.arith import odd_primes
from gaussmoments.checks import rows_for_prime
from gaussmoments.cli import main
from gaussmoments.config import default_config
from gaussmoments.report import FIELDS, from_csv, from_json
from gaussmoments.sweep import conjecture_sweep, sweep


def test_verify_exit_codes(capsys):
    assert main(["verify", "--prime", "7", "--n", "1"]) == 0
    assert main(["verify", "--prime", "9", "--n", "1"]) == 2
    assert main(["verify", "--prime", "13", "--n", "13"]) == 2
    assert "not coprime" in capsys.readouterr().err


def test_usage_errors():
    assert main([]) == 2
    assert main(["sweep", "--what", "nothing", "--max", "10"]) == 2
    assert main(["charsum", "--prime", "7", "--which", "Q"]) == 2


def test_verify_runs_every_group():
    names = {r.check_name for r in rows_for_prime(13, 1, "all", default_config())}
    for n in ("L21", "L22", "L23", "L24_m1", "L25_m1", "L26", "L27", "L28", "M2_closed", "M10_decomp",
              "TH3", "PSI_BOUND", "S", "THM16", "THM15", "LVAL_dual"):
        assert n in names
    assert "X13" in {r.check_name for r in rows_for_prime(7, 1, "bounds", default_config())}


def test_charsum(capsys):
    assert main(["charsum", "--prime", "7", "--which", "S"]) == 0
    assert capsys.readouterr().out.strip() == "0"
    assert main(["charsum", "--prime", "13", "--which", "N"]) == 0
    assert capsys.readouterr().out.strip() == "16"
    assert main(["charsum", "--prime", "7", "--which", "phi"]) == 0
    vals = [int(v) for v in capsys.readouterr().out.split()]
    assert len(vals) == 6
    assert all(abs(v) <= 2 * 7**0.5 + 1 for v in vals[1:])
    assert main(["charsum", "--prime", "11", "--which", "psi"]) == 0
    assert len(capsys.readouterr().out.split()) == 10


def _constant(capsys, *args):
    assert main(["constant-c", *args]) == 0
    out = dict(line.split(" = ") for line in capsys.readouterr().out.strip().splitlines())
    return out


def test_constant_c(capsys):
    d = _constant(capsys)
    assert d["C"].startswith("1.130750020228")
    assert float(d["tail_bound"]) < 1e-10
    small = _constant(capsys, "--prime-limit", "1000", "--no-tail-correction")
    assert float(small["tail_bound"]) > float(d["tail_bound"])
    two = _constant(capsys, "--series-terms", "2")
    eight = _constant(capsys, "--series-terms", "8")
    assert abs(float(two["C"]) - float(eight["C"])) < float(two["series_tail"])
    assert main(["constant-c", "--prime-limit", "10"]) == 2


def test_moment(capsys):
    assert main(["moment", "--prime", "7", "--k", "2"]) == 0
    out = capsys.readouterr().out
    assert "exact       = 624" in out
    assert main(["moment", "--prime", "7", "--k", "0"]) == 2


def test_sweep_csv_json(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "a.json"
    assert main(["sweep", "--what", "lemmas", "--min", "3", "--max", "40", "--out", str(a)]) == 0
    assert main(["sweep", "--what", "lemmas", "--min", "3", "--max", "40", "--out", str(b), "--format", "json"]) == 0
    text = a.read_text()
    assert text.splitlines()[0] == ",".join(FIELDS)
    csv_rows = from_csv(text)
    json_rows = from_json(b.read_text())
    assert [(r.p, r.check_name, r.value) for r in csv_rows] == [(r.p, r.check_name, r.value) for r in json_rows]
    assert set(json.loads(b.read_text())[0]) == set(FIELDS)
    assert [(r.p, r.check_name) for r in csv_rows] == sorted((r.p, r.check_name) for r in csv_rows)


def test_sweep_empty_range(tmp_path):
    out = tmp_path / "e.csv"
    assert main(["sweep", "--what", "all", "--min", "14", "--max", "16", "--out", str(out)]) == 0
    assert out.read_text() == ",".join(FIELDS) + "\n"


def test_sweep_unwritable():
    assert main(["sweep", "--what", "lemmas", "--max", "10", "--out", "/nonexistent/dir/x.csv"]) == 3


def test_sweep_deterministic_across_threads(tmp_path):
    outs = []
    for t in ("1", "3"):
        path = tmp_path / f"t{t}.csv"
        assert main(["sweep", "--what", "all", "--max", "60", "--threads", t, "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_sweep_skips_primes_dividing_n():
    rows = sweep("lemmas", 3, 20, 3, default_config())
    assert 3 not in {r.p for r in rows}


def test_moment10_sweep_trend():
    rows = [r for r in sweep("moment10", 101, 400, 1, default_config()) if r.check_name == "M10_ratio"]
    assert [r.p for r in rows] == odd_primes(101, 400)
    assert abs(float(rows[-1].ratio) - 126) < 0.05 * 126


def test_conjecture_sweep():
    cfg = default_config()
    rows = conjecture_sweep(2, 5, 60, True, cfg)
    assert {r.check_name for r in rows} == {"CONJ_G2", "CONJ_A2", "CONJ_GW2", "CONJ_AW2"}
    assert not any(r.failed for r in rows)
    high = conjecture_sweep(6, 5, 30, False, cfg)
    assert {r.satisfied for r in high} == {"report_only"}
    with pytest.raises(ValueError):
        conjecture_sweep(2, 30, 30, False, cfg)
    with pytest.raises(ValueError):
        conjecture_sweep(0, 5, 30, False, cfg)


def test_failing_check_gives_exit_1(tmp_path):
    cfg = tmp_path / "tight.toml"
    cfg.write_text("envelope_S = 1e-9\n")
    assert main(["sweep", "--what", "bounds", "--min", "17", "--max", "17", "--config", str(cfg),
                 "--out", str(tmp_path / "o.csv")]) == 1


def test_bad_config_path():
    assert main(["verify", "--prime", "7", "--config", "/nonexistent.toml"]) == 3


def test_console_script_entry():
    r = subprocess.run([sys.executable, "-m", "gaussmoments.cli", "charsum", "--prime", "13", "--which", "T"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and int(r.stdout) >= 0
