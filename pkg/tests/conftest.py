import dataclasses

import numpy as np
import pytest

from voltcruise.airframe import AircraftParams
from voltcruise.battery import BatteryParams
from voltcruise.planner import MissionSpec

GOLDEN_DENSITY = 1.058


def golden_aircraft(**kw):
    base = AircraftParams(
        wing_area_m2=30.0,
        cd0=0.02,
        cd2=0.05,
        cl_max=1.8,
        v_max_rated_mps=78.6,
        v_div_mps=205.8,
        weight_N=28000.0,
    )
    return dataclasses.replace(base, **kw)


def golden_battery(**kw):
    base = BatteryParams(
        a_V_per_C=0.00028,
        b_V=682.0,
        q_full_C=979200.0,
        q_min_C=196000.0,
        q_max_C=781000.0,
        eta=0.85,
    )
    return dataclasses.replace(base, **kw)


def golden_mission(**kw):
    base = MissionSpec(altitude_m=1500.0, x0_m=0.0, xf_m=150000.0, t0_s=0.0, q0_C=700000.0)
    return dataclasses.replace(base, **kw)


def random_scenarios(n, seed):
    """(mission, aircraft, battery) triples over the randomized acceptance ranges.

    Density comes from the altitude; roughly one scenario in five uses a = 0.
    """
    rng = np.random.default_rng(seed)
    out = []
    for k in range(n):
        w = float(rng.uniform(22500.0, 28500.0))
        h = float(rng.uniform(1000.0, 4000.0))
        eta = float(rng.uniform(0.7, 0.95))
        a = 0.0 if k % 5 == 0 else float(rng.uniform(1e-5, 1e-3))
        out.append((golden_mission(altitude_m=h), golden_aircraft(weight_N=w), golden_battery(a_V_per_C=a, eta=eta)))
    return out


@pytest.fixture
def aircraft():
    return golden_aircraft()


@pytest.fixture
def battery():
    return golden_battery()


@pytest.fixture
def mission():
    return golden_mission()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
