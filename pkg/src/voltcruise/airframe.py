"""Drag polar, speed envelope and minimum-drag airspeed for steady level cruise.

All quantities are SI. Lift equals weight and thrust equals drag throughout.
"""

import math
from dataclasses import dataclass, fields

from .errors import DomainError


def _require_positive(name, value):
    if not (value > 0 and math.isfinite(value)):
        raise DomainError(f"{name} must be positive and finite, got {value!r}", field=name)


@dataclass(frozen=True)
class AircraftParams:
    wing_area_m2: float
    cd0: float
    cd2: float
    cl_max: float
    v_max_rated_mps: float
    v_div_mps: float
    weight_N: float

    def __post_init__(self):
        for f in fields(self):
            _require_positive(f.name, getattr(self, f.name))


@dataclass(frozen=True)
class SpeedEnvelope:
    v_stall_mps: float
    v_max_mps: float

    @property
    def is_empty(self):
        return not self.v_stall_mps < self.v_max_mps

    def contains(self, v):
        """True when ``v`` lies strictly inside the envelope."""
        return self.v_stall_mps < v < self.v_max_mps


@dataclass(frozen=True)
class AeroPoint:
    airspeed_mps: float
    cl: float
    cd: float
    drag_N: float
    drag_dv: float
    drag_dvv: float


def stall_speed(weight_N, density, wing_area_m2, cl_max):
    for name, value in (
        ("weight_N", weight_N),
        ("density", density),
        ("wing_area_m2", wing_area_m2),
        ("cl_max", cl_max),
    ):
        _require_positive(name, value)
    return math.sqrt(2.0 * weight_N / (density * wing_area_m2 * cl_max))


def max_speed(v_div_mps, v_max_rated_mps):
    _require_positive("v_div_mps", v_div_mps)
    _require_positive("v_max_rated_mps", v_max_rated_mps)
    return min(v_div_mps, v_max_rated_mps)


def speed_envelope(params, density):
    """Stall and maximum speeds at ``density``. An empty envelope is returned, not raised."""
    return SpeedEnvelope(
        stall_speed(params.weight_N, density, params.wing_area_m2, params.cl_max),
        max_speed(params.v_div_mps, params.v_max_rated_mps),
    )


def lift_coefficient(v, weight_N, density, wing_area_m2):
    _require_positive("airspeed", v)
    return 2.0 * weight_N / (density * wing_area_m2 * v * v)


def drag(v, params, density):
    """Evaluate the parabolic drag polar and its first two airspeed derivatives at ``v``."""
    _require_positive("airspeed", v)
    _require_positive("density", density)
    rho_s = density * params.wing_area_m2
    w2 = params.weight_N * params.weight_N
    cl = lift_coefficient(v, params.weight_N, density, params.wing_area_m2)
    cd = params.cd0 + params.cd2 * cl * cl
    drag_n = 0.5 * params.cd0 * rho_s * v * v + 2.0 * params.cd2 * w2 / (rho_s * v * v)
    drag_dv = params.cd0 * rho_s * v - 4.0 * params.cd2 * w2 / (rho_s * v**3)
    drag_dvv = params.cd0 * rho_s + 12.0 * params.cd2 * w2 / (rho_s * v**4)
    return AeroPoint(v, cl, cd, drag_n, drag_dv, drag_dvv)


def min_drag_speed(params, density):
    """Airspeed where dD/dv vanishes; independent of the speed envelope."""
    _require_positive("density", density)
    return math.sqrt(
        2.0 * params.weight_N / (density * params.wing_area_m2) * math.sqrt(params.cd2 / params.cd0)
    )


def min_drag(params):
    """Drag at the minimum-drag airspeed, 2 W sqrt(cd0 cd2). Density cancels."""
    return 2.0 * params.weight_N * math.sqrt(params.cd0 * params.cd2)
