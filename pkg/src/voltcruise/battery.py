"""Affine-voltage battery: supply voltage, discharge rate, closed-form charge history.

The supply voltage is ``U = a*Q + b``. During steady cruise the propulsive
power ``D*v`` is constant, so ``-eta * U * dQ/dt = D*v`` separates and
integrates to a quadratic in ``Q``. Its admissible root is evaluated here.
"""

import math
from dataclasses import dataclass

from .errors import ChargeDepletionError, DomainError, ModelViolationError

# Below this the voltage slope is treated as exactly zero (constant-voltage branch).
A_ZERO_THRESHOLD = 1e-15


@dataclass(frozen=True)
class BatteryParams:
    a_V_per_C: float
    b_V: float
    q_full_C: float
    q_min_C: float
    q_max_C: float
    eta: float

    def __post_init__(self):
        for name in self.__dataclass_fields__:
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}", field=name)
        if self.a_V_per_C < 0:
            raise DomainError(f"a_V_per_C must be >= 0, got {self.a_V_per_C}", field="a_V_per_C")
        if self.b_V <= 0:
            raise DomainError(f"b_V must be > 0, got {self.b_V}", field="b_V")
        if not 0 < self.eta <= 1:
            raise DomainError(f"eta must lie in (0, 1], got {self.eta}", field="eta")
        if self.q_full_C <= 0:
            raise DomainError(f"q_full_C must be > 0, got {self.q_full_C}", field="q_full_C")
        if self.q_min_C < 0:
            raise DomainError(f"q_min_C must be >= 0, got {self.q_min_C}", field="q_min_C")
        if not self.q_min_C < self.q_max_C:
            raise DomainError(
                f"q_min_C ({self.q_min_C}) must be below q_max_C ({self.q_max_C})", field="q_min_C"
            )
        if self.q_max_C > self.q_full_C:
            raise DomainError(
                f"q_max_C ({self.q_max_C}) must not exceed q_full_C ({self.q_full_C})",
                field="q_max_C",
            )

    @property
    def constant_voltage(self):
        return self.a_V_per_C < A_ZERO_THRESHOLD


@dataclass(frozen=True)
class BatteryState:
    time_s: float
    charge_C: float
    voltage_V: float
    current_A: float


def voltage(charge_C, battery):
    return battery.a_V_per_C * charge_C + battery.b_V


def charge_rate(charge_C, drag_N, airspeed_mps, battery):
    """dQ/dt in C/s; negative while the aircraft draws power."""
    u = voltage(charge_C, battery)
    if not u > 0:
        raise ModelViolationError(f"supply voltage {u} V at Q={charge_C} C is not positive")
    return -drag_N * airspeed_mps / (battery.eta * u)


def current(charge_C, drag_N, airspeed_mps, battery):
    return -charge_rate(charge_C, drag_N, airspeed_mps, battery)


def depletion_function_Z(t, t0, q0, drag_N, airspeed_mps, battery):
    """Affine-in-time quantity whose negativity guarantees a positive charge root."""
    a, b = battery.a_V_per_C, battery.b_V
    return drag_N * airspeed_mps / battery.eta * (t - t0) - 0.5 * a * q0 * q0 - b * q0


def charge_at(t, t0, q0, drag_N, airspeed_mps, battery):
    """Closed-form charge at time ``t`` for constant drag and airspeed since ``t0``.

    Raises ChargeDepletionError when the voltage slope is positive and no
    positive root exists at ``t``.
    """
    if t < t0:
        raise DomainError(f"t={t} precedes t0={t0}", field="t")
    b = battery.b_V
    if battery.constant_voltage:
        return q0 - drag_N * airspeed_mps / (battery.eta * b) * (t - t0)
    z = depletion_function_Z(t, t0, q0, drag_N, airspeed_mps, battery)
    if z >= 0:
        raise ChargeDepletionError(f"Z(t)={z:.6g} >= 0 at t={t}: battery depleted before this time")
    # Rationalized positive root of a*Q^2/2 + b*Q + Z = 0; stable as a -> 0.
    return -2.0 * z / (b + math.sqrt(b * b - 2.0 * battery.a_V_per_C * z))


def state_at(t, t0, q0, drag_N, airspeed_mps, battery):
    q = charge_at(t, t0, q0, drag_N, airspeed_mps, battery)
    return BatteryState(t, q, voltage(q, battery), current(q, drag_N, airspeed_mps, battery))
