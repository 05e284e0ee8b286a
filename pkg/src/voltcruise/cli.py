"""Command-line front end.

Exit codes: 0 feasible / success, 1 usage or input error, 2 model-level
infeasibility (including battery depletion and failed oracle checks).
"""

import argparse
import csv
import dataclasses
import io
import json
import math
import sys

from . import __version__, airframe
from .atmosphere import air_density
from .config import ConfigError, golden_scenario_path, load_scenario
from .errors import DomainError
from .oracle import grid_search_optimal_speed, integrate_charge, pontryagin_residuals
from .planner import plan_cruise, resolve_density
from .sweeps import SweepGrid, sweep_airspeed_vs_altitude, sweep_min_eta_vs_weight

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2

TRAJECTORY_COLUMNS = ("t_s", "x_m", "Q_C", "U_V", "i_A", "P_W")
J_PER_KWH = 3.6e6


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _num(x):
    return "null" if x is None else repr(float(x))


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _plan_payload(scenario, plan):
    payload = dataclasses.asdict(plan)
    payload["energy_kWh"] = plan.energy_J / J_PER_KWH
    payload["density_source"] = "override" if scenario.density_override is not None else "altitude"
    return payload


def cmd_plan(scenario, fmt="text", out=None):
    plan = plan_cruise(scenario.mission, scenario.aircraft, scenario.battery, scenario.density_override)
    fs = plan.feasibility
    if fmt == "json":
        text = json.dumps(_plan_payload(scenario, plan), indent=2) + "\n"
    elif fmt == "csv":
        fields = ["v_opt_mps", "tf_s", "drag_N", "energy_J", "qf_C", "density_kg_m3"]
        fields += [f.name for f in dataclasses.fields(fs)]
        row = [getattr(plan, k) for k in fields[:6]] + [getattr(fs, k) for k in fields[6:]]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(fields)
        w.writerow(["" if v is None else ("true" if v is True else "false" if v is False else repr(v)) for v in row])
        text = buf.getvalue()
    else:
        source = "override" if scenario.density_override is not None else "altitude model"
        lines = [
            f"scenario: {scenario.description}" if scenario.description else "scenario: (unnamed)",
            f"density_kg_m3: {_num(plan.density_kg_m3)} ({source})",
            f"v_opt_mps: {_num(plan.v_opt_mps)}",
            f"tf_s: {_num(plan.tf_s)}",
            f"drag_N: {_num(plan.drag_N)}",
            f"energy_J: {_num(plan.energy_J)}",
            f"energy_kWh: {_num(plan.energy_J / J_PER_KWH)}",
            f"qf_C: {_num(plan.qf_C)}",
            f"speed_lower_margin: {_num(fs.speed_lower_margin)}",
            f"speed_upper_margin: {_num(fs.speed_upper_margin)}",
            f"q0_margin: {_num(fs.q0_margin)}",
            f"qf_margin: {_num(fs.qf_margin)}",
            f"z_tf: {_num(fs.z_tf)}",
            f"feasible: {'true' if fs.feasible else 'false'}",
        ]
        if not fs.feasible:
            lines.append("failed: " + "; ".join(fs.failed_conditions()))
        text = "\n".join(lines) + "\n"
    _emit(text, out)
    return EXIT_OK if fs.feasible else EXIT_INFEASIBLE


def cmd_simulate(scenario, step_s=0.1, out=None):
    m, ac, bat = scenario.mission, scenario.aircraft, scenario.battery
    plan = plan_cruise(m, ac, bat, scenario.density_override)
    if not (plan.feasibility.speed_lower_margin > 0 and plan.feasibility.speed_upper_margin > 0):
        print("optimal airspeed lies outside the speed envelope; nothing to simulate", file=sys.stderr)
        return EXIT_INFEASIBLE
    traj = integrate_charge(m, ac, bat, plan.v_opt_mps, step_s, density=plan.density_kg_m3)

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRAJECTORY_COLUMNS)
    for row in traj.rows():
        w.writerow([repr(v) for v in row])
    if traj.depleted:
        buf.write(f"# depleted,t_s={traj.depletion_time_s!r},x_m={traj.depletion_distance_m!r}\n")
    _emit(buf.getvalue(), out)

    summary_stream = sys.stderr if out in (None, "-") else sys.stdout
    if traj.depleted:
        print(
            f"depleted: charge reached q_min at x={traj.depletion_distance_m!r} m "
            f"before xf={m.distance_m!r} m",
            file=summary_stream,
        )
        return EXIT_INFEASIBLE
    q_rk4 = traj.final_charge_C
    rel = abs(q_rk4 - plan.qf_C) / m.q0_C if m.q0_C else 0.0
    print(
        f"rk4_qf_C={q_rk4!r} closed_form_qf_C={plan.qf_C!r} relative_error={rel:.3e} step_s={step_s!r}",
        file=summary_stream,
    )
    return EXIT_OK


def cmd_sweep(scenario, experiment="fig2", fmt="csv", out=None, weights=None, altitudes=None,
              q0_values=None, workers=None):
    kw = {}
    if weights:
        kw["weights_N"] = weights
    if altitudes:
        kw["altitudes_m"] = altitudes
    if q0_values:
        kw["q0_values_C"] = q0_values
    grid = SweepGrid(**kw)
    if experiment == "fig2":
        result = sweep_airspeed_vs_altitude(grid, scenario.aircraft, scenario.battery, workers=workers)
    else:
        result = sweep_min_eta_vs_weight(
            grid, scenario.mission, scenario.aircraft, scenario.battery,
            density=scenario.density_override, workers=workers,
        )
    _emit(result.to_json() if fmt == "json" else result.to_csv(), out)
    return EXIT_OK


def cmd_atmosphere(altitude_m):
    print(f"{air_density(altitude_m):.6g}")
    return EXIT_OK


def cmd_check(scenario, step_s=0.1):
    """Cross-check the closed-form plan against the numerical oracles."""
    m, ac, bat = scenario.mission, scenario.aircraft, scenario.battery
    rho = resolve_density(m, scenario.density_override)
    plan = plan_cruise(m, ac, bat, rho)
    results = []

    env = airframe.speed_envelope(ac, rho)
    if env.contains(plan.v_opt_mps):
        v_grid, _ = grid_search_optimal_speed(m, ac, bat, rho, 1e-3)
        results.append(("grid-search optimum", abs(v_grid - plan.v_opt_mps), 1e-3))
        traj = integrate_charge(m, ac, bat, plan.v_opt_mps, step_s, density=rho)
        if not traj.depleted and m.distance_m > 0:
            results.append(("rk4 final charge", abs(traj.final_charge_C - plan.qf_C) / m.q0_C, 1e-6))
            results.append(("power balance", abs(traj.energy_J() - plan.energy_J) / plan.energy_J, 1e-6))
    scale = plan.drag_N * plan.v_opt_mps / bat.eta
    diag = pontryagin_residuals(plan, m, ac, bat)
    results.append(("hamiltonian residual", diag.hamiltonian_residual / scale, 1e-9))
    results.append(("stationarity residual", diag.stationarity_residual / scale, 1e-9))

    ok = True
    for name, value, tol in results:
        passed = value < tol
        ok = ok and passed
        print(f"{'PASS' if passed else 'FAIL'} {name}: {value:.3e} (tol {tol:g})")
    return EXIT_OK if ok else EXIT_INFEASIBLE


def build_parser():
    parser = _Parser(prog="voltcruise", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    cfg = _Parser(add_help=False)
    cfg.add_argument("--config", default=None, help="scenario JSON (default: bundled golden scenario)")

    p = sub.add_parser("plan", parents=[cfg], help="closed-form optimal cruise plan")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", default=None)

    p = sub.add_parser("simulate", parents=[cfg], help="RK4 charge trajectory as CSV")
    p.add_argument("--step", type=float, default=0.1)
    p.add_argument("--out", default=None)

    p = sub.add_parser("sweep", parents=[cfg], help="parameter sweeps")
    p.add_argument("--experiment", choices=("fig2", "fig3"), default="fig2")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.add_argument("--weights", type=_float_list, default=None)
    p.add_argument("--altitudes", type=_float_list, default=None)
    p.add_argument("--q0-values", type=_float_list, default=None)
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("atmosphere", help="air density at an altitude")
    p.add_argument("--altitude", type=float, required=True)

    p = sub.add_parser("check", parents=[cfg], help="cross-check the plan against numerical oracles")
    p.add_argument("--step", type=float, default=0.1)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "atmosphere":
            return cmd_atmosphere(args.altitude)
        scenario = load_scenario(args.config or golden_scenario_path())
        if args.command == "plan":
            return cmd_plan(scenario, args.format, args.out)
        if args.command == "simulate":
            if not (args.step > 0 and math.isfinite(args.step)):
                raise DomainError(f"--step must be a positive number, got {args.step}")
            return cmd_simulate(scenario, args.step, args.out)
        if args.command == "sweep":
            return cmd_sweep(
                scenario, args.experiment, args.format, args.out,
                args.weights, args.altitudes, args.q0_values, args.workers,
            )
        return cmd_check(scenario, args.step)
    except (ConfigError, DomainError) as exc:
        print(f"voltcruise: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"voltcruise: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
