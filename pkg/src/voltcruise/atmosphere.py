"""Tropospheric air density from the NASA linear-lapse model."""

from dataclasses import dataclass

from .errors import DomainError

# Constants kept to the digits of the published density expression.
P_COEFF = 101.29
T_BASE = 288.14
LAPSE_RATE = 0.00649
EXP_NUM = 4.256
R_COEFF = 0.2869
T_REF = 288.08
EXP_DEN = 5.256

MIN_ALTITUDE_M = 0.0
MAX_ALTITUDE_M = 11000.0


@dataclass(frozen=True)
class AtmosphereSample:
    altitude_m: float
    density_kg_m3: float


def air_density(altitude_m):
    """Air density in kg/m^3 at geometric altitude ``altitude_m`` (meters).

    Valid on the troposphere only, ``0 <= altitude_m < 11000``.
    """
    h = float(altitude_m)
    if not MIN_ALTITUDE_M <= h < MAX_ALTITUDE_M:
        raise DomainError(
            f"altitude {h} m is outside the valid range [0, 11000) m",
            field="altitude_m",
        )
    return P_COEFF * (T_BASE - LAPSE_RATE * h) ** EXP_NUM / (R_COEFF * T_REF**EXP_DEN)


def sample(altitude_m):
    return AtmosphereSample(float(altitude_m), air_density(altitude_m))
