"""Minimum-energy steady cruise plans for all-electric aircraft.

The energy-optimal cruise speed is the minimum-drag airspeed, held constant
over the segment. Given that speed, the final time, final charge and total
energy follow in closed form, and feasibility reduces to four signed margins
(plus the sign of the depletion function when the voltage slope is positive).
Infeasible plans are returned as data with ``feasible=False``; they are not
raised.
"""

import math
from dataclasses import dataclass

from . import airframe
from .atmosphere import air_density
from .battery import charge_at, depletion_function_Z
from .errors import ChargeDepletionError, DomainError


@dataclass(frozen=True)
class MissionSpec:
    altitude_m: float
    x0_m: float
    xf_m: float
    t0_s: float
    q0_C: float

    def __post_init__(self):
        for name in self.__dataclass_fields__:
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite", field=name)
        if self.xf_m < self.x0_m:
            raise DomainError(f"xf_m ({self.xf_m}) must not precede x0_m ({self.x0_m})", field="xf_m")
        if self.q0_C < 0:
            raise DomainError(f"q0_C must be >= 0, got {self.q0_C}", field="q0_C")

    @property
    def distance_m(self):
        return self.xf_m - self.x0_m


@dataclass(frozen=True)
class FeasibilityReport:
    speed_lower_margin: float
    speed_upper_margin: float
    q0_margin: float
    qf_margin: float
    z_tf: float | None
    feasible: bool

    @classmethod
    def from_margins(cls, speed_lower, speed_upper, q0_margin, qf_margin, z_tf=None):
        ok = speed_lower > 0 and speed_upper > 0 and q0_margin > 0 and qf_margin > 0
        if z_tf is not None:
            ok = ok and z_tf < 0
        return cls(speed_lower, speed_upper, q0_margin, qf_margin, z_tf, bool(ok))

    def failed_conditions(self):
        names = []
        if not self.speed_lower_margin > 0:
            names.append("v_stall < v*")
        if not self.speed_upper_margin > 0:
            names.append("v* < v_max")
        if not self.q0_margin > 0:
            names.append("Q0 < Q_max")
        if not self.qf_margin > 0:
            names.append("Q(tf) > Q_min")
        if self.z_tf is not None and not self.z_tf < 0:
            names.append("Z(tf) < 0")
        return names


@dataclass(frozen=True)
class CruisePlan:
    v_opt_mps: float
    tf_s: float
    drag_N: float
    energy_J: float
    qf_C: float
    feasibility: FeasibilityReport
    density_kg_m3: float

    @property
    def feasible(self):
        return self.feasibility.feasible


def resolve_density(mission, density=None):
    """Density override if given, otherwise the tropospheric model at the mission altitude."""
    if density is not None:
        if not density > 0:
            raise DomainError(f"density override must be > 0, got {density}", field="density_kg_m3")
        return float(density)
    return air_density(mission.altitude_m)


def optimal_airspeed(aircraft, density):
    return airframe.min_drag_speed(aircraft, density)


def optimal_final_time(mission, v_opt):
    if not v_opt > 0:
        raise DomainError(f"airspeed must be > 0, got {v_opt}", field="v_opt")
    return mission.t0_s + mission.distance_m / v_opt


def total_energy(mission, aircraft, battery, density):
    """Battery energy drawn over the segment at the optimal speed, in joules.

    Voltage cancels out of U*i = D*v/eta, so a and b never enter.
    """
    v = optimal_airspeed(aircraft, density)
    d = airframe.drag(v, aircraft, density).drag_N
    return d * mission.distance_m / battery.eta


def _optimum(mission, aircraft, density):
    v = optimal_airspeed(aircraft, density)
    return v, airframe.drag(v, aircraft, density).drag_N, optimal_final_time(mission, v)


def final_charge(mission, aircraft, battery, density):
    v, d, tf = _optimum(mission, aircraft, density)
    return charge_at(tf, mission.t0_s, mission.q0_C, d, v, battery)


def final_depletion_value(mission, aircraft, battery, density):
    v, d, tf = _optimum(mission, aircraft, density)
    return depletion_function_Z(tf, mission.t0_s, mission.q0_C, d, v, battery)


def _charge_past_depletion(z, battery):
    # Continue the quadratic's upper root while it is real; beyond that the
    # voltage model has collapsed, report the charge where U = 0.
    a, b = battery.a_V_per_C, battery.b_V
    disc = b * b - 2.0 * a * z
    if disc < 0:
        return -b / a
    return -2.0 * z / (b + math.sqrt(disc))


def plan_cruise(mission, aircraft, battery, density=None):
    """Compute the minimum-energy cruise plan and its feasibility margins.

    ``density`` overrides the altitude-derived air density when given.
    """
    rho = resolve_density(mission, density)
    envelope = airframe.speed_envelope(aircraft, rho)
    v, d, tf = _optimum(mission, aircraft, rho)
    energy = d * mission.distance_m / battery.eta

    z_tf = None
    if not battery.constant_voltage:
        z_tf = depletion_function_Z(tf, mission.t0_s, mission.q0_C, d, v, battery)
    try:
        qf = charge_at(tf, mission.t0_s, mission.q0_C, d, v, battery)
    except ChargeDepletionError:
        qf = _charge_past_depletion(z_tf, battery)

    report = FeasibilityReport.from_margins(
        v - envelope.v_stall_mps,
        envelope.v_max_mps - v,
        battery.q_max_C - mission.q0_C,
        qf - battery.q_min_C,
        z_tf,
    )
    return CruisePlan(v, tf, d, energy, qf, report, rho)


def _usable_charge_energy(q0, battery):
    """Energy stored between q_min and q0 under the affine voltage model (J)."""
    a, b, qmin = battery.a_V_per_C, battery.b_V, battery.q_min_C
    if battery.constant_voltage:
        return b * (q0 - qmin)
    return 0.5 * a * (q0 * q0 - qmin * qmin) + b * (q0 - qmin)


def min_required_efficiency(mission, aircraft, battery, density):
    """Electrical efficiency at which the segment ends exactly at ``q_min``.

    ``battery.eta`` is ignored. A result above 1 means no physical
    efficiency makes the segment feasible.
    """
    if not mission.q0_C > battery.q_min_C:
        raise DomainError(
            f"q0_C ({mission.q0_C}) must exceed q_min_C ({battery.q_min_C}) for a finite minimum efficiency",
            field="q0_C",
        )
    d = airframe.drag(optimal_airspeed(aircraft, density), aircraft, density).drag_N
    return d * mission.distance_m / _usable_charge_energy(mission.q0_C, battery)


def max_feasible_range(aircraft, battery, q0, density):
    """Cruise distance at the optimal speed after which the charge reaches ``q_min``."""
    if q0 < battery.q_min_C:
        raise DomainError(f"q0 ({q0}) is below q_min_C ({battery.q_min_C})", field="q0_C")
    d = airframe.drag(optimal_airspeed(aircraft, density), aircraft, density).drag_N
    return battery.eta * _usable_charge_energy(q0, battery) / d
