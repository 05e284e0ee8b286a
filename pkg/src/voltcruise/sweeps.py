"""Deterministic parameter sweeps over weight, altitude and initial charge.

Two experiments are provided: optimal airspeed over a weight x altitude grid,
and the minimum electrical efficiency over a weight x initial-charge grid.
Rows always come back in lexicographic grid order (weights outermost), even
when cells are evaluated on a thread pool.
"""

import csv
import dataclasses
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__, airframe
from .atmosphere import air_density
from .errors import DomainError
from .planner import min_required_efficiency, optimal_airspeed, resolve_density

FIG2_WEIGHTS_N = tuple(float(w) for w in np.linspace(22500.0, 28500.0, 7))
FIG2_ALTITUDES_M = tuple(float(h) for h in np.linspace(1000.0, 4000.0, 7))
FIG3_Q0_VALUES_C = (500000.0, 600000.0, 700000.0, 781000.0)


def _check_axis(name, values):
    values = tuple(float(v) for v in values)
    if not values:
        raise DomainError(f"{name} must not be empty", field=name)
    if any(b <= a for a, b in zip(values, values[1:])):
        raise DomainError(f"{name} must be strictly increasing, got {list(values)}", field=name)
    return values


@dataclass(frozen=True)
class SweepGrid:
    weights_N: tuple = FIG2_WEIGHTS_N
    altitudes_m: tuple = FIG2_ALTITUDES_M
    q0_values_C: tuple = FIG3_Q0_VALUES_C

    def __post_init__(self):
        for f in dataclasses.fields(self):
            object.__setattr__(self, f.name, _check_axis(f.name, getattr(self, f.name)))


@dataclass
class SweepResult:
    columns: tuple
    rows: list
    metadata: dict = field(default_factory=dict)

    def column(self, name):
        k = self.columns.index(name)
        return [row[k] for row in self.rows]

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_fmt(v) for v in row])
        return buf.getvalue()

    def to_json(self):
        payload = {
            "metadata": self.metadata,
            "columns": list(self.columns),
            "rows": [{c: _json_value(v) for c, v in zip(self.columns, row)} for row in self.rows],
        }
        return json.dumps(payload, indent=2) + "\n"


def _json_value(value):
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _map_ordered(fn, cells, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, cells))
    return [fn(c) for c in cells]


AIRSPEED_COLUMNS = (
    "weight_N",
    "altitude_m",
    "density_kg_m3",
    "v_opt_mps",
    "v_stall_mps",
    "v_max_mps",
    "in_envelope",
)


def sweep_airspeed_vs_altitude(grid, aircraft, battery=None, workers=None):
    """Optimal cruise airspeed for every (weight, altitude) cell.

    ``battery`` is accepted for symmetry with the efficiency sweep; the
    optimal speed does not depend on it.
    """
    cells = [(w, h) for w in grid.weights_N for h in grid.altitudes_m]

    def evaluate(cell):
        w, h = cell
        ac = dataclasses.replace(aircraft, weight_N=w)
        rho = air_density(h)
        v = optimal_airspeed(ac, rho)
        env = airframe.speed_envelope(ac, rho)
        return (w, h, rho, v, env.v_stall_mps, env.v_max_mps, env.contains(v))

    rows = _map_ordered(evaluate, cells, workers)
    meta = {
        "experiment": "optimal airspeed vs altitude and weight",
        "aircraft": dataclasses.asdict(aircraft),
        "grid": {"weights_N": list(grid.weights_N), "altitudes_m": list(grid.altitudes_m)},
        "version": __version__,
    }
    return SweepResult(AIRSPEED_COLUMNS, rows, meta)


EFFICIENCY_COLUMNS = ("weight_N", "q0_C", "eta_min", "valid_q0", "feasible_at_some_eta")


def sweep_min_eta_vs_weight(grid, mission, aircraft, battery, density=None, workers=None):
    """Minimum electrical efficiency for every (weight, initial charge) cell.

    Cells with ``q0 <= q_min`` are flagged with ``valid_q0=False`` and a NaN
    efficiency instead of aborting the sweep. ``feasible_at_some_eta`` is
    false unless the required efficiency is below 1.
    """
    rho = resolve_density(mission, density)
    cells = [(w, q0) for w in grid.weights_N for q0 in grid.q0_values_C]

    def evaluate(cell):
        w, q0 = cell
        ac = dataclasses.replace(aircraft, weight_N=w)
        m = dataclasses.replace(mission, q0_C=q0)
        try:
            eta_min = min_required_efficiency(m, ac, battery, rho)
        except DomainError:
            return (w, q0, float("nan"), False, False)
        return (w, q0, eta_min, True, eta_min < 1.0)

    rows = _map_ordered(evaluate, cells, workers)
    meta = {
        "experiment": "minimum electrical efficiency vs weight and initial charge",
        "aircraft": dataclasses.asdict(aircraft),
        "battery": dataclasses.asdict(battery),
        "mission": dataclasses.asdict(mission),
        "density_kg_m3": rho,
        "grid": {"weights_N": list(grid.weights_N), "q0_values_C": list(grid.q0_values_C)},
        "version": __version__,
    }
    return SweepResult(EFFICIENCY_COLUMNS, rows, meta)
