import json

import pytest

from icobr import cli, verify
from icobr.achievability import RelayMode, max_sum_rate, max_sum_rate_value
from icobr.channel import scenario_from_dict
from icobr.outerbound import sum_rate_upper_bound


def base_config(**overrides):
    doc = dict(a12=0.5, a21=1.8, b1=1.0, b2=10.0, c1=2.0, c2=1.0,
               P1=10.0, P2=10.0, P1R=10.0, P2R=10.0, PR=10.0,
               eta=2.0, eta_mac=1.0, eta_bc=1.0)
    doc.update(overrides)
    return doc


@pytest.fixture
def config_path(tmp_path):
    def write(name="cfg.json", **overrides):
        path = tmp_path / name
        path.write_text(json.dumps(base_config(**overrides)))
        return str(path)
    return write


def test_analyze_text(config_path, capsys):
    rc = cli.main(["analyze", config_path()])
    out = capsys.readouterr().out
    assert rc == 0
    assert "sum-capacity established" in out
    assert "MAC-limited" in out
    assert "xi* 0.25" in out


def test_analyze_json_matches_module_calls(config_path, capsys):
    rc = cli.main(["analyze", config_path(), "--json"])
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    sc = scenario_from_dict(base_config())
    direct = max_sum_rate(sc, RelayMode.SIGNAL_RELAYING)
    assert report["achievable"]["signal_relaying"]["sum_rate"] == direct.sum_rate
    assert report["achievable"]["signal_relaying"]["xi_star"] == direct.xi_star.xi
    assert report["upper_bound"]["rate"] == sum_rate_upper_bound(sc).rate
    assert report["capacity_established"] is True


def test_analyze_regime_error_is_reported_inline(config_path, capsys):
    rc = cli.main(["analyze", config_path(a12=1.5)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "upper bound: unavailable" in out
    assert "achievable (signal_relaying)" in out


def test_analyze_all_zero_powers(config_path, capsys):
    rc = cli.main(["analyze", config_path(P1=0, P2=0, P1R=0, P2R=0, PR=0),
                   "--json"])
    assert rc == 0
    report = json.loads(capsys.readouterr().out)
    assert report["achievable"]["interference_forwarding"]["sum_rate"] == 0.0
    assert report["upper_bound"]["rate"] == 0.0


def test_analyze_invalid_config_exits_1(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"a12": 0.5}')
    assert cli.main(["analyze", str(bad)]) == 1
    assert "missing keys" in capsys.readouterr().err
    assert cli.main(["analyze", str(tmp_path / "absent.json")]) == 1


def test_region_dump(config_path, tmp_path, capsys):
    out_path = tmp_path / "region.txt"
    rc = cli.main(["region", config_path(), "--xi", "0", "-o", str(out_path)])
    assert rc == 0
    text = out_path.read_text()
    # with xi = 0 the relay-to-D1 row carries nothing
    assert "1*r1r + 1*r2cp <= 0" in text
    assert "EQUIVALENT" in text
    assert "split-rate constraints" in text
    assert "Fourier-Motzkin" in text


def test_region_dump_signal_relaying_mode(config_path, tmp_path):
    out_path = tmp_path / "region.txt"
    rc = cli.main(["region", config_path(), "--xi", "0.5", "--mode", "sr",
                   "-o", str(out_path)])
    assert rc == 0
    text = out_path.read_text()
    assert "1*r2cp <= 0" in text      # pinned stream rows present
    assert "-1*r2cp <= 0" in text
    assert "PASS" in text


def test_region_xi_validation(config_path, tmp_path):
    assert cli.main(["region", config_path(), "--xi", "1.5",
                     "-o", str(tmp_path / "r.txt")]) == 1


def sweep_spec(tmp_path, **overrides):
    doc = dict(base=base_config(), param="c1", values=[0.5, 2.0, 4.0],
               objectives=["achievable_sr", "achievable_if", "upper_bound"],
               optimize_bw=False)
    doc.update(overrides)
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(doc))
    return str(path)


def test_sweep_rows_and_regime_warnings(tmp_path):
    spec_path = sweep_spec(tmp_path)
    out_csv = tmp_path / "out.csv"
    assert cli.main(["sweep", spec_path, "-o", str(out_csv)]) == 0
    lines = out_csv.read_text().splitlines()
    header = lines[0].split(",")
    assert header == ["c1", "achievable_sr_rate", "achievable_sr_xi_star",
                      "achievable_if_rate", "achievable_if_xi_star",
                      "upper_bound_rate", "upper_bound_xi_star", "warnings"]
    assert len(lines) == 4
    # c1 = 0.5 < c2: the bound columns are empty and a warning is recorded
    row_low = lines[1].split(",")
    assert row_low[5] == "" and row_low[6] == ""
    assert "upper_bound" in row_low[7]
    # valid rows carry no warning and keep achievable <= bound
    row_ok = lines[2].split(",")
    assert row_ok[7] == ""
    assert float(row_ok[1]) <= float(row_ok[5]) + 1e-9


def test_sweep_single_value_matches_analyze(tmp_path):
    spec_path = sweep_spec(tmp_path, values=[2.0])
    out_csv = tmp_path / "out.csv"
    assert cli.main(["sweep", spec_path, "-o", str(out_csv)]) == 0
    row = out_csv.read_text().splitlines()[1].split(",")
    sc = scenario_from_dict(base_config())
    rate, xi = max_sum_rate_value(sc, RelayMode.SIGNAL_RELAYING)
    # CSV cells carry 9 significant digits
    assert float(row[1]) == pytest.approx(rate, rel=1e-8)
    assert float(row[2]) == pytest.approx(xi, rel=1e-8)


def test_sweep_deterministic_output(tmp_path):
    spec_path = sweep_spec(tmp_path, values=[1.0, 3.0])
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(["sweep", spec_path, "-o", str(a)]) == 0
    assert cli.main(["sweep", spec_path, "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_parallel_matches_serial(tmp_path):
    spec_path = sweep_spec(tmp_path)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(["sweep", spec_path, "-o", str(a)]) == 0
    assert cli.main(["sweep", spec_path, "-o", str(b), "--workers", "2"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_sweep_workers_env_override(tmp_path, monkeypatch):
    spec_path = sweep_spec(tmp_path, values=[2.0])
    monkeypatch.setenv("ICOBR_WORKERS", "not-a-number")
    assert cli.main(["sweep", spec_path, "-o", str(tmp_path / "x.csv")]) == 1
    monkeypatch.setenv("ICOBR_WORKERS", "2")
    assert cli.main(["sweep", spec_path, "-o", str(tmp_path / "y.csv")]) == 0


def test_sweep_lo_hi_count_and_bad_spec(tmp_path):
    spec_path = sweep_spec(tmp_path)
    doc = json.loads(open(spec_path).read())
    del doc["values"]
    doc.update(lo=1.0, hi=2.0, count=3)
    path = tmp_path / "spec2.json"
    path.write_text(json.dumps(doc))
    assert cli.main(["sweep", str(path), "-o", str(tmp_path / "z.csv")]) == 0
    assert len((tmp_path / "z.csv").read_text().splitlines()) == 4

    doc["objectives"] = ["bogus"]
    path.write_text(json.dumps(doc))
    assert cli.main(["sweep", str(path), "-o", str(tmp_path / "w.csv")]) == 1


def test_sweep_presets_are_loadable():
    for name in cli.PRESETS:
        spec = cli.parse_sweep_spec(cli.load_sweep_spec(name))
        assert spec["values"]
    with pytest.raises(cli.SpecError):
        cli.load_sweep_spec("missing_preset")


def test_sweep_bandwidth_columns(tmp_path):
    doc = dict(base={k: v for k, v in base_config().items()
                     if k not in ("eta", "eta_mac", "eta_bc")},
               param="b1", values=[2.0],
               objectives=["achievable_sr"], optimize_bw=True, eta=1.0)
    path = tmp_path / "bw.json"
    path.write_text(json.dumps(doc))
    out_csv = tmp_path / "bw.csv"
    assert cli.main(["sweep", str(path), "-o", str(out_csv)]) == 0
    lines = out_csv.read_text().splitlines()
    assert lines[0].split(",") == ["b1", "achievable_sr_rate",
                                   "achievable_sr_xi_star",
                                   "achievable_sr_eta_mac_star", "warnings"]
    eta_mac = float(lines[1].split(",")[3])
    assert 0.0 <= eta_mac <= 1.0


def test_verify_smoke_single_scenario(capsys):
    assert cli.main(["verify", "--seed", "7", "--n", "1"]) == 0
    out = capsys.readouterr().out
    assert "invariants passed" in out


def test_verify_negative_control(monkeypatch, capsys):
    # corrupt the achievable evaluator: dominance over the bound must break
    # and the failure must surface with a counterexample and exit code 2
    real = verify.achievability.max_sum_rate_value

    def corrupted(sc, mode):
        rate, xi = real(sc, mode)
        return rate + 0.5, xi

    monkeypatch.setattr(verify.achievability, "max_sum_rate_value", corrupted)
    report = verify.run_verification(seed=3, n_scenarios=5)
    broken = {r.name: r for r in report.results}["achievable <= upper bound"]
    assert not broken.passed
    assert "achievable" in broken.failures[0]

    monkeypatch.setattr(verify, "run_verification",
                        lambda seed, n_scenarios: report)
    assert cli.main(["verify", "--seed", "3", "--n", "5"]) == 2
    assert "counterexample" in capsys.readouterr().out


def test_verify_rejects_bad_n():
    assert cli.main(["verify", "--n", "0"]) == 1
