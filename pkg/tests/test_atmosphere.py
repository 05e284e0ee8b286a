import numpy as np
import pytest
from hypothesis import given, strategies as st

from voltcruise.atmosphere import air_density, sample
from voltcruise.errors import DomainError


def test_sea_level_density():
    # 101.29 * 288.14**4.256 / (0.2869 * 288.08**5.256), evaluated at 40 digits
    assert air_density(0.0) == pytest.approx(1.2266137874109689, rel=1e-13)


def test_density_at_1500m_formula_value():
    assert air_density(1500.0) == pytest.approx(1.0596942259887955, rel=1e-13)


def test_density_positive_and_decreasing_on_grid():
    h = np.linspace(0.0, 10999.0, 100)
    rho = np.array([air_density(x) for x in h])
    assert np.all(rho > 0)
    step = 0.5
    slope = np.array([(air_density(x + step) - air_density(x - step)) / (2 * step) for x in h[1:-1]])
    assert np.all(slope < 0)


@given(st.floats(0.0, 10999.0), st.floats(0.0, 10999.0))
def test_monotone(h1, h2):
    # Below ~1 mm the difference drops under double resolution.
    if h2 - h1 > 1e-3:
        assert air_density(h1) > air_density(h2)


@pytest.mark.parametrize("h", [-1.0, 11000.0, 20000.0, float("nan")])
def test_out_of_range_names_valid_range(h):
    with pytest.raises(DomainError, match=r"\[0, 11000\)"):
        air_density(h)


def test_sample_record():
    s = sample(2000)
    assert s.altitude_m == 2000.0
    assert s.density_kg_m3 == air_density(2000)
