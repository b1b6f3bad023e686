import json

import numpy as np
import pytest

from etawave import boundstates as bs
from etawave import cli
from etawave.waveop import PhysicalConstants

SWEEP_HEADER = "e_over_v0,T1,T2,R1,R2,T_qm,R_qm,sum"


def run(argv):
    return cli.main(argv)


def test_missing_required_flag_exits_64():
    with pytest.raises(SystemExit) as err:
        run(["barrier", "--length", "1.0"])
    assert err.value.code == 64


def test_barrier_sweep_csv(tmp_path):
    out = tmp_path / "sweep.csv"
    code = run(
        ["barrier", "--v0", "10", "--length", "10", "--emin", "1.2", "--emax", "1.8",
         "--steps", "4", "--output", str(out)]
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == SWEEP_HEADER
    assert len(lines) == 5
    for line in lines[1:]:
        fields = [float(v) for v in line.split(",")]
        assert len(fields) == 8
        assert abs(fields[-1] - 1.0) <= 1e-10


def test_barrier_sweep_deterministic(tmp_path):
    argv = ["barrier", "--v0", "10", "--length", "10", "--steps", "5"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(argv + ["--output", str(a)])
    run(argv + ["--output", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_barrier_bridges_critical_point(tmp_path):
    out = tmp_path / "crossing.csv"
    code = run(
        ["barrier", "--v0", "10", "--length", "0.5", "--emin", "0.5", "--emax", "1.5",
         "--steps", "3", "--output", str(out)]
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 4
    assert "nan" not in out.read_text()


def test_step_critical_point_flagged(tmp_path):
    out = tmp_path / "step.csv"
    code = run(
        ["step", "--v0", "10", "--emin", "0.5", "--emax", "1.5", "--steps", "3",
         "--output", str(out)]
    )
    assert code == 2
    text = out.read_text()
    assert "nan" in text
    assert len(text.splitlines()) == 4


def test_well_reference_level(tmp_path):
    out = tmp_path / "well.csv"
    assert run(["well", "--length", "10", "--nmax", "3", "--output", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,E_n_eV,residual"
    assert len(lines) == 4
    n, e1, residual = lines[1].split(",")
    assert n == "1"
    assert float(e1) == pytest.approx(3.8302947720187685e-3, rel=1e-10)
    assert float(residual) <= 1e-10


def test_well_numeric_deviation_column(tmp_path):
    out = tmp_path / "well.csv"
    assert run(
        ["well", "--length", "10", "--nmax", "5", "--numeric", "--output", str(out)]
    ) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,E_n_eV,residual,E_n_numeric,rel_deviation"
    for line in lines[1:]:
        assert float(line.split(",")[4]) <= 1e-10


def test_well_rejects_nmax_zero():
    with pytest.raises(SystemExit) as err:
        run(["well", "--length", "10", "--nmax", "0"])
    assert err.value.code == 64


def test_point_inside_band_falls_back_to_series(capsys):
    code = run(
        ["point", "--v0", "10", "--length", "10", "--e-over-v0", "1.000000000001"]
    )
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("method,")
    numeric = lines[1].split(",", 1)
    closed = lines[2].split(",", 1)
    assert numeric[0] == "numeric" and closed[0] == "closed"
    assert numeric[1] == closed[1]


def test_check_reports_ok(capsys):
    assert run(["check"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[-1] == "OK all identities and properties hold"
    assert all(line.startswith("PASS") for line in lines[:-1])


def test_check_fault_injection_fails(capsys):
    assert run(["check", "--fault", "eta-sign"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out
    assert "FAILED first=clifford.eta_nilpotent" in out


def test_check_deterministic_per_seed(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    run(["check", "--seed", "3", "--output", str(a)])
    run(["check", "--seed", "3", "--output", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_config_file_sets_constants(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("hbar_c = 200.0\nmass_c2 = 1.0e5\n")
    out = tmp_path / "well.csv"
    assert run(
        ["well", "--length", "10", "--nmax", "1", "--config", str(cfg), "--output", str(out)]
    ) == 0
    e1 = float(out.read_text().splitlines()[1].split(",")[1])
    expected = bs.level_energy(1, 10.0, 1.0e5, PhysicalConstants(hbar_c=200.0, mass_c2=1.0e5))
    assert e1 == pytest.approx(expected, rel=1e-10)


def test_flag_overrides_config(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("mass_c2 = 1.0e5\n")
    out = tmp_path / "well.csv"
    assert run(
        ["well", "--length", "10", "--nmax", "1", "--config", str(cfg),
         "--mass", "5.0e5", "--output", str(out)]
    ) == 0
    e1 = float(out.read_text().splitlines()[1].split(",")[1])
    expected = bs.level_energy(1, 10.0, 5.0e5, PhysicalConstants())
    assert e1 == pytest.approx(expected, rel=1e-10)


def test_config_unknown_key_rejected(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("banana = 3\n")
    with pytest.raises(SystemExit) as err:
        run(["well", "--length", "10", "--config", str(cfg)])
    assert err.value.code == 64


def test_precision_out_of_range_rejected():
    with pytest.raises(SystemExit) as err:
        run(["well", "--length", "10", "--precision", "5"])
    assert err.value.code == 64


def test_barrier_json_records(capsys):
    code = run(
        ["barrier", "--v0", "10", "--length", "10", "--steps", "3", "--format", "json"]
    )
    assert code == 0
    records = json.loads(capsys.readouterr().out)
    assert isinstance(records, list) and len(records) == 3
    assert set(records[0]) == set(SWEEP_HEADER.split(","))
    assert records[0]["sum"] == pytest.approx(1.0, abs=1e-10)


def test_spin_down_marked_in_output(tmp_path, capsys):
    out = tmp_path / "down.csv"
    run(
        ["barrier", "--v0", "10", "--length", "10", "--steps", "3", "--spin", "down",
         "--output", str(out)]
    )
    assert out.read_text().startswith("# incident_spin=down")
    run(
        ["barrier", "--v0", "10", "--length", "10", "--steps", "3", "--spin", "down",
         "--format", "json"]
    )
    records = json.loads(capsys.readouterr().out)
    assert all(rec["incident_spin"] == "down_extrapolation" for rec in records)


def test_pauli_table(tmp_path):
    out = tmp_path / "pauli.csv"
    assert run(
        ["pauli", "--base-size", "8", "--levels", "2", "--output", str(out)]
    ) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "h_nm,identity_residual,gauge_residual,commutator_residual"
    assert len(lines) == 3
    h0 = float(lines[1].split(",")[0])
    h1 = float(lines[2].split(",")[0])
    assert h1 == pytest.approx(h0 / 2.0, rel=1e-12)


def test_pauli_rejects_small_base():
    with pytest.raises(SystemExit) as err:
        run(["pauli", "--base-size", "4"])
    assert err.value.code == 64


def test_precision_controls_mantissa(tmp_path):
    out = tmp_path / "coarse.csv"
    run(["well", "--length", "10", "--nmax", "1", "--precision", "6", "--output", str(out)])
    e_field = out.read_text().splitlines()[1].split(",")[1]
    mantissa = e_field.split("e")[0]
    assert len(mantissa.split(".")[1]) == 5
