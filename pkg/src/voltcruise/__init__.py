"""Energy-optimal steady cruise planning for all-electric aircraft."""

__version__ = "0.1.0"

from .airframe import AircraftParams, AeroPoint, SpeedEnvelope  # noqa: E402
from .battery import BatteryParams, BatteryState  # noqa: E402
from .errors import ChargeDepletionError, DomainError, ModelViolationError  # noqa: E402
from .planner import CruisePlan, FeasibilityReport, MissionSpec, plan_cruise  # noqa: E402

__all__ = [
    "AeroPoint",
    "AircraftParams",
    "BatteryParams",
    "BatteryState",
    "ChargeDepletionError",
    "CruisePlan",
    "DomainError",
    "FeasibilityReport",
    "MissionSpec",
    "ModelViolationError",
    "SpeedEnvelope",
    "plan_cruise",
]
