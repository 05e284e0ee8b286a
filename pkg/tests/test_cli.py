import json

import numpy as np
import pytest

from voltcruise.cli import main
from voltcruise.config import golden_scenario_path
from voltcruise.planner import plan_cruise
from voltcruise.config import load_scenario


def scenario_file(tmp_path, **changes):
    d = json.loads(golden_scenario_path().read_text())
    for dotted, value in changes.items():
        section, key = dotted.split("__")
        d[section][key] = value
    path = tmp_path / "s.json"
    path.write_text(json.dumps(d, indent=2))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_report(text):
    out = {}
    for line in text.splitlines():
        key, _, value = line.partition(": ")
        out[key] = value
    return out


def test_plan_golden(capsys):
    code, out, _ = run(capsys, "plan")
    assert code == 0
    r = parse_report(out)
    assert float(r["v_opt_mps"]) == pytest.approx(52.8172, abs=1e-4)
    assert float(r["tf_s"]) == pytest.approx(2840.0, abs=0.1)
    assert float(r["energy_J"]) == pytest.approx(3.125e8, rel=1e-3)
    assert float(r["energy_kWh"]) == pytest.approx(float(r["energy_J"]) / 3.6e6)
    assert float(r["qf_C"]) == pytest.approx(3.2119e5, rel=1e-4)
    assert r["feasible"] == "true"
    assert r["density_kg_m3"].endswith("(override)")


def test_plan_json_mirrors_field_names(capsys):
    code, out, _ = run(capsys, "plan", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert set(payload) >= {"v_opt_mps", "tf_s", "drag_N", "energy_J", "qf_C", "feasibility"}
    assert set(payload["feasibility"]) == {
        "speed_lower_margin", "speed_upper_margin", "q0_margin", "qf_margin", "z_tf", "feasible"
    }
    plan = plan_cruise(*_golden_args())
    assert payload["v_opt_mps"] == plan.v_opt_mps
    assert payload["qf_C"] == plan.qf_C


def _golden_args():
    s = load_scenario(golden_scenario_path())
    return s.mission, s.aircraft, s.battery, s.density_override


def test_plan_csv(capsys):
    code, out, _ = run(capsys, "plan", "--format", "csv")
    header, row = out.strip().split("\n")
    assert code == 0
    assert header.split(",")[0] == "v_opt_mps"
    assert row.split(",")[-1] == "true"


def test_plan_zero_distance(capsys, tmp_path):
    code, out, _ = run(capsys, "plan", "--config", scenario_file(tmp_path, mission__xf_m=0.0))
    r = parse_report(out)
    assert code == 0
    assert float(r["tf_s"]) == 0.0
    assert float(r["energy_J"]) == 0.0
    assert float(r["qf_C"]) == pytest.approx(7e5, rel=1e-15)


def test_plan_q0_at_floor_exits_2(capsys, tmp_path):
    code, out, _ = run(capsys, "plan", "--config", scenario_file(tmp_path, mission__q0_C=196000.0))
    assert code == 2
    assert "feasible: false" in out
    assert "Q(tf) > Q_min" in out


def test_malformed_config_exits_1(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    code, _, err = run(capsys, "plan", "--config", str(bad))
    assert code == 1
    assert "error" in err
    code, _, err = run(capsys, "plan", "--config", scenario_file(tmp_path, aircraft__wing_area_m2=-3.0))
    assert code == 1
    assert "wing_area_m2" in err


def test_usage_error_exits_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["plan", "--format", "xml"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1


def test_plan_is_deterministic(capsys):
    outputs = {run(capsys, "plan", "--format", fmt)[1] for fmt in ("text",) * 3}
    assert len(outputs) == 1


def test_simulate_golden(capsys, tmp_path):
    out_path = tmp_path / "traj.csv"
    code, out, _ = run(capsys, "simulate", "--step", "0.1", "--out", str(out_path))
    assert code == 0
    rel = float(out.split("relative_error=")[1].split()[0])
    assert rel < 1e-6
    lines = out_path.read_text().splitlines()
    assert lines[0] == "t_s,x_m,Q_C,U_V,i_A,P_W"
    last = [float(v) for v in lines[-1].split(",")]
    assert last[1] == pytest.approx(150000.0)


def test_simulate_coarse_step_has_larger_mismatch(capsys, tmp_path):
    # At 10 s the truncation error already sits below accumulated roundoff,
    # so the coarse run uses 200 s.
    rels = []
    for step in ("200", "0.1"):
        _, out, _ = run(capsys, "simulate", "--step", step, "--out", str(tmp_path / f"t{step}.csv"))
        rels.append(float(out.split("relative_error=")[1].split()[0]))
    assert rels[0] > rels[1]


def test_simulate_constant_voltage_is_affine(capsys, tmp_path):
    out_path = tmp_path / "traj.csv"
    code, _, _ = run(
        capsys, "simulate", "--step", "10", "--out", str(out_path),
        "--config", scenario_file(tmp_path, battery__a_V_per_C=0.0),
    )
    assert code == 0
    data = np.loadtxt(out_path, delimiter=",", skiprows=1)
    t, q = data[:, 0], data[:, 2]
    slope = np.polyfit(t, q, 1)
    assert np.max(np.abs(np.polyval(slope, t) - q)) < 1e-6


def test_simulate_depletion_exit_2(capsys, tmp_path):
    out_path = tmp_path / "traj.csv"
    code, _, _ = run(
        capsys, "simulate", "--step", "1", "--out", str(out_path),
        "--config", scenario_file(tmp_path, mission__xf_m=400000.0),
    )
    assert code == 2
    assert out_path.read_text().splitlines()[-1].startswith("# depleted")


def test_simulate_bad_step(capsys):
    code, _, _ = run(capsys, "simulate", "--step", "0")
    assert code == 1


def test_sweep_fig2(capsys):
    code, out, _ = run(capsys, "sweep", "--experiment", "fig2")
    lines = out.strip().split("\n")
    assert code == 0
    assert len(lines) == 1 + 49
    v = np.array([float(l.split(",")[3]) for l in lines[1:]]).reshape(7, 7)
    assert np.all(np.diff(v, axis=0) > 0) and np.all(np.diff(v, axis=1) > 0)


def test_sweep_fig3_json(capsys):
    code, out, _ = run(capsys, "sweep", "--experiment", "fig3", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert len(payload["rows"]) == 28
    assert payload["metadata"]["density_kg_m3"] == 1.058


def test_single_cell_sweep_matches_plan(capsys):
    _, out, _ = run(capsys, "sweep", "--experiment", "fig2", "--weights", "28000", "--altitudes", "1500")
    _, plan_out, _ = run(capsys, "plan", "--config", str(golden_scenario_path("cx300_montreal_ottawa_troposphere")))
    rows = out.strip().split("\n")
    assert len(rows) == 2
    assert float(rows[1].split(",")[3]) == float(parse_report(plan_out)["v_opt_mps"])


def test_sweep_invalid_grid_exits_1(capsys):
    code, _, err = run(capsys, "sweep", "--weights", "28000,27000")
    assert code == 1
    assert "strictly increasing" in err


def test_atmosphere(capsys):
    code, out, _ = run(capsys, "atmosphere", "--altitude", "1500")
    assert code == 0
    assert out.strip() == "1.05969"
    code, _, err = run(capsys, "atmosphere", "--altitude", "12000")
    assert code == 1
    assert "[0, 11000)" in err


def test_check_golden(capsys):
    code, out, _ = run(capsys, "check")
    assert code == 0
    assert out.count("PASS") == 5 and "FAIL" not in out
