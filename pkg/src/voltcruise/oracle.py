"""Numerical cross-checks for the closed-form cruise solution.

Three independent routes:

* fixed-step RK4 integration of the charge ODE at a given airspeed,
* brute-force minimisation of segment energy over an airspeed grid,
* residuals of the Pontryagin optimality conditions along a plan.

None of these call the closed-form charge or optimal-speed expressions,
except ``pontryagin_residuals`` which needs the optimal costate.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import airframe
from .battery import BatteryState, charge_at
from .errors import ChargeDepletionError, DomainError, ModelViolationError
from .planner import resolve_density

BISECTION_TOL_S = 1e-6


@dataclass
class ChargeTrajectory:
    """RK4 charge history sampled on the integration grid.

    Arrays hold time, cumulative distance and charge. Voltage, current and
    battery power are derived from them. When the charge reaches the floor
    before the segment ends, ``depleted`` is set and the last sample is the
    located crossing.
    """

    time_s: np.ndarray
    distance_m: np.ndarray
    charge_C: np.ndarray
    step_s: float
    airspeed_mps: float
    drag_N: float
    a_V_per_C: float
    b_V: float
    eta: float
    depleted: bool = False
    depletion_time_s: float | None = None
    depletion_distance_m: float | None = None

    @property
    def voltage_V(self):
        return self.a_V_per_C * self.charge_C + self.b_V

    @property
    def current_A(self):
        return self.drag_N * self.airspeed_mps / (self.eta * self.voltage_V)

    @property
    def power_W(self):
        return self.voltage_V * self.current_A

    @property
    def samples(self):
        return [
            BatteryState(float(t), float(q), float(u), float(i))
            for t, q, u, i in zip(self.time_s, self.charge_C, self.voltage_V, self.current_A)
        ]

    @property
    def final_charge_C(self):
        return float(self.charge_C[-1])

    def energy_J(self):
        """Energy drawn from the battery, sum of U*i*dt over the samples.

        ``i*dt`` is the charge drop of each step and ``U`` the step-average
        voltage, which is exact for an affine voltage model.
        """
        u = self.voltage_V
        dq = -np.diff(self.charge_C)
        return float(np.sum(0.5 * (u[:-1] + u[1:]) * dq))

    def rows(self):
        """(t_s, x_m, Q_C, U_V, i_A, P_W) tuples for CSV export."""
        cols = (self.time_s, self.distance_m, self.charge_C, self.voltage_V, self.current_A, self.power_W)
        return [tuple(float(c[k]) for c in cols) for k in range(len(self.time_s))]


def _rk4_step(q, h, rhs):
    k1 = rhs(q)
    k2 = rhs(q + 0.5 * h * k1)
    k3 = rhs(q + 0.5 * h * k2)
    k4 = rhs(q + h * k3)
    return q + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate_charge(mission, aircraft, battery, airspeed, step_s, density=None, q_floor=None):
    """Integrate dQ/dt = -D v / (eta (a Q + b)) with classical RK4 at fixed step.

    Integration starts at ``(t0, Q0)`` and stops when the cruise distance is
    covered, the final step shortened so the last sample lands exactly on
    ``xf``. If the charge reaches ``q_floor`` (default ``battery.q_min_C``)
    first, the crossing time inside the offending step is located by
    bisection and the trajectory ends there with ``depleted=True``.
    """
    if not step_s > 0:
        raise DomainError(f"step_s must be > 0, got {step_s}", field="step_s")
    rho = resolve_density(mission, density)
    envelope = airframe.speed_envelope(aircraft, rho)
    if not envelope.contains(airspeed):
        raise DomainError(
            f"airspeed {airspeed} m/s outside the envelope "
            f"({envelope.v_stall_mps:.6g}, {envelope.v_max_mps:.6g})",
            field="airspeed",
        )
    floor = battery.q_min_C if q_floor is None else float(q_floor)
    d = airframe.drag(airspeed, aircraft, rho).drag_N
    power = d * airspeed / battery.eta
    a, b = battery.a_V_per_C, battery.b_V

    def rhs(q):
        u = a * q + b
        if not u > 0:
            raise ModelViolationError(f"supply voltage {u} V is not positive")
        return -power / u

    def advance(q, h):
        try:
            return _rk4_step(q, h, rhs)
        except ModelViolationError:
            return -math.inf

    t0, q0 = mission.t0_s, mission.q0_C
    duration = mission.distance_m / airspeed
    n_full = int(duration // step_s)
    remainder = duration - n_full * step_s
    # Offsets from t0; a sliver of a step left by rounding is dropped.
    offsets = [k * step_s for k in range(n_full + 1)]
    if remainder > 1e-9 * step_s:
        offsets.append(duration)
    else:
        offsets[-1] = duration if n_full else 0.0

    times = [t0]
    charges = [q0]
    depleted = False
    q = q0
    if q <= floor and duration > 0:
        depleted = True
        offsets = [0.0]
    for k in range(1, len(offsets)):
        h = offsets[k] - offsets[k - 1]
        q_next = advance(q, h)
        if q_next <= floor:
            lo, hi = 0.0, h
            while hi - lo > BISECTION_TOL_S:
                mid = 0.5 * (lo + hi)
                if advance(q, mid) > floor:
                    lo = mid
                else:
                    hi = mid
            tau = 0.5 * (lo + hi)
            times.append(t0 + offsets[k - 1] + tau)
            charges.append(advance(q, tau))
            depleted = True
            break
        q = q_next
        times.append(t0 + offsets[k])
        charges.append(q)

    time_arr = np.asarray(times, dtype=float)
    traj = ChargeTrajectory(
        time_s=time_arr,
        distance_m=mission.x0_m + airspeed * (time_arr - t0),
        charge_C=np.asarray(charges, dtype=float),
        step_s=float(step_s),
        airspeed_mps=float(airspeed),
        drag_N=d,
        a_V_per_C=a,
        b_V=b,
        eta=battery.eta,
        depleted=depleted,
    )
    if depleted:
        traj.depletion_time_s = float(time_arr[-1])
        traj.depletion_distance_m = float(traj.distance_m[-1] - mission.x0_m)
    return traj


def speed_grid(envelope, grid_step_mps):
    """Grid points strictly inside the open envelope, spaced ``grid_step_mps`` from stall."""
    n = int(math.floor((envelope.v_max_mps - envelope.v_stall_mps) / grid_step_mps))
    v = envelope.v_stall_mps + grid_step_mps * np.arange(1, n + 1)
    return v[v < envelope.v_max_mps]


def segment_energy(v, distance_m, aircraft, eta, density):
    """D(v) * distance / eta for an array of airspeeds, evaluated from the raw drag polar."""
    v = np.asarray(v, dtype=float)
    rho_s = density * aircraft.wing_area_m2
    d = 0.5 * aircraft.cd0 * rho_s * v**2 + 2.0 * aircraft.cd2 * aircraft.weight_N**2 / (rho_s * v**2)
    return d * distance_m / eta


def grid_search_optimal_speed(mission, aircraft, battery, density, grid_step_mps=1e-3):
    """Brute-force energy minimiser over the open speed envelope.

    Returns ``(v_best, energy_best)``. Ties on a zero-length segment are
    broken by drag per metre, which has the same minimiser.
    """
    if not grid_step_mps > 0:
        raise DomainError(f"grid_step_mps must be > 0, got {grid_step_mps}", field="grid_step_mps")
    envelope = airframe.speed_envelope(aircraft, density)
    if envelope.is_empty:
        raise DomainError(
            f"empty speed envelope: v_stall={envelope.v_stall_mps:.6g} >= v_max={envelope.v_max_mps:.6g}",
            field="speed_envelope",
        )
    v = speed_grid(envelope, grid_step_mps)
    if v.size == 0:
        raise DomainError("grid step leaves no point inside the envelope", field="grid_step_mps")
    per_metre = segment_energy(v, 1.0, aircraft, battery.eta, density)
    k = int(np.argmin(per_metre))
    return float(v[k]), float(per_metre[k] * mission.distance_m)


@dataclass(frozen=True)
class PontryaginDiagnostics:
    hamiltonian_residual: float
    costate_q_residual: float
    stationarity_residual: float


def pontryagin_residuals(plan, mission, aircraft, battery, n_samples=101):
    """Evaluate the optimality conditions along ``plan`` at ``n_samples`` times.

    The distance costate is fixed at its optimal value ``-D(v_D,min)/eta``
    and the charge costate at zero, so the Hamiltonian vanishes only when the
    plan flies the minimum-drag speed.
    """
    n_samples = max(int(n_samples), 100)
    rho = plan.density_kg_m3
    eta = battery.eta
    v = plan.v_opt_mps
    v_ref = airframe.min_drag_speed(aircraft, rho)
    costate_x = -airframe.drag(v_ref, aircraft, rho).drag_N / eta
    costate_q = 0.0
    point = airframe.drag(v, aircraft, rho)
    d = point.drag_N

    tf = mission.t0_s + mission.distance_m / v
    h_max = 0.0
    for t in np.linspace(mission.t0_s, tf, n_samples):
        try:
            q = charge_at(float(t), mission.t0_s, mission.q0_C, d, v, battery)
            u = battery.a_V_per_C * q + battery.b_V
            charge_term = costate_q * d * v / (eta * u)
        except ChargeDepletionError:
            charge_term = 0.0
        h = costate_x * v + d * v / eta - charge_term
        h_max = max(h_max, abs(h))

    return PontryaginDiagnostics(
        hamiltonian_residual=h_max,
        costate_q_residual=abs(costate_q),
        stationarity_residual=abs(point.drag_dv) * v * v / eta,
    )
