"""Command-line contract: exit codes, formats, determinism."""

import io
import json

import pytest

from favlab import cli


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, stdout=out)
    return code, out.getvalue()


def test_gen_round_trip(tmp_path):
    path = tmp_path / "sys.json"
    code, _ = run(["gen", "--preset", "gasket", "--out", str(path)])
    assert code == 0
    code, text = run(["favard", "--system-file", str(path), "--n", "1", "--grid", "32"])
    assert code == 0
    assert text.splitlines()[0] == "system,n,method,value,error,param,seed"


def test_unknown_preset_exits_2():
    code, _ = run(["favard", "--preset", "bogus", "--n", "1"])
    assert code == 2


def test_missing_system_exits_2():
    code, _ = run(["favard", "--n", "1"])
    assert code == 2


def test_cap_exceeded_exits_3():
    code, _ = run(["shadow", "--preset", "gasket", "--n", "9", "--theta", "0.3", "--cap", "100"])
    assert code == 3


def test_bad_usage_exits_2():
    code, _ = run(["favard", "--preset", "gasket"])  # missing --n
    assert code == 2
    code, _ = run(["nonsense"])
    assert code == 2


def test_favard_csv_values():
    code, text = run(["favard", "--preset", "gasket", "--n", "0", "--grid", "16"])
    assert code == 0
    row = text.splitlines()[1].split(",")
    assert row[0] == "gasket" and row[2] == "quadrature"
    assert float(row[3]) == pytest.approx(2.0, abs=1e-9)


def test_buffon_deterministic_across_thread_counts():
    args = ["buffon", "--preset", "corner4", "--n", "2", "--trials", "30000", "--seed", "5"]
    outputs = set()
    for threads in ("1", "8"):
        code, text = run(args + ["--threads", threads])
        assert code == 0
        outputs.add(text)
    assert len(outputs) == 1


def test_verify_json_is_byte_identical_and_exit_codes():
    args = ["verify", "--suite", "turan", "--trials", "40", "--seed", "7"]
    _, first = run(args + ["--threads", "1"])
    code, second = run(args + ["--threads", "8"])
    assert first == second
    assert code == 0
    report = json.loads(first)
    assert set(report) == {"suite", "trials", "worst_case", "pass"}


def test_shadow_csv(tmp_path):
    path = tmp_path / "prof.csv"
    code, _ = run(
        ["shadow", "--preset", "gasket", "--n", "1", "--theta", "0.0", "--out", str(path)]
    )
    assert code == 0
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# system=gasket n=1 theta=0")
    assert lines[1] == "cell_lo,cell_hi,value"
    assert len(lines) == 2 + 5  # five cells at depth 1, angle 0


def test_spectral_csv_columns():
    code, text = run(
        [
            "spectral", "--preset", "gasket", "--t", "0.37",
            "--n", "8", "--m", "2", "--ell", "3", "--grid", "50",
        ]
    )
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "x,abs_p1,abs_p2,abs_psharp,abs_pflat,abs_nu_hat"
    assert len(lines) == 51


def test_scan_product_json():
    code, text = run(
        ["scan", "--check", "product", "--preset", "corner4", "--N", "3",
         "--K", "1", "2", "--M", "1", "--theta-grid", "16"]
    )
    assert code == 0
    rep = json.loads(text)
    assert rep["check"] == "product"
    assert rep["worst_ratio"] >= 0


def test_scan_baddir_json():
    code, text = run(
        ["scan", "--check", "baddir", "--preset", "gasket",
         "--m", "2", "--ell", "4", "--tau", "0.05", "--t-grid", "40"]
    )
    assert code == 0
    rep = json.loads(text)
    assert rep["h_measure"] <= rep["bound"]


def test_config_overrides_flags(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"n": 0}')
    code, text = run(
        ["favard", "--preset", "gasket", "--n", "3", "--grid", "16", "--config", str(cfg)]
    )
    assert code == 0
    assert text.splitlines()[1].split(",")[1] == "0"


def test_json_error_reporting(capsys):
    code = cli.main(["favard", "--preset", "bogus", "--n", "1", "--json"], stdout=io.StringIO())
    assert code == 2
    err = capsys.readouterr().err
    assert json.loads(err)["error"] == "unknown-preset"


def test_unwritable_path_exits_2(tmp_path):
    target = tmp_path / "no-such-dir" / "x.csv"
    code, _ = run(["favard", "--preset", "gasket", "--n", "0", "--out", str(target)])
    assert code == 2


def test_verify_failure_exit_code(monkeypatch):
    from favlab import verify as vmod

    def fake(trials, seed, threads=None):
        return {"suite": "turan", "trials": trials, "worst_case": 99.0, "pass": False}

    monkeypatch.setitem(vmod.SUITES, "turan", fake)
    code, _ = run(["verify", "--suite", "turan", "--trials", "5", "--seed", "1"])
    assert code == 1
