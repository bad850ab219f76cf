from fractions import Fraction

import numpy as np
import pytest

from ecoroute.errors import ConfigError, FuelDomainError
from ecoroute.fuel import (
    HERA_CURVES, FuelModel, GradientClass, VehicleType, builtin_fuel_model, fcz, fuel_rate,
    grams_to_liters, load_fuel_model, nearest_class_array, parse_fuel_config, rgf,
)

SAMPLE = builtin_fuel_model("sample")
IDENTITY = builtin_fuel_model("identity")

# consumption table transcribed independently as exact decimal strings
TABLE = {
    "motorcycle": ("25.722", "276.13", "-0.254", "0.00311"),
    "passenger_car": ("54.7", "496", "-0.542", "0.0042"),
    "light_duty": ("146.27", "-0.0000106", "-2.596", "0.01984"),
    "rigid_truck": ("152.96", "604.156", "-2.295", "0.0238"),
    "articulated_truck": ("332.603", "1680.879", "-4.676", "0.0311"),
    "bus": ("281.735", "4186.178", "-3.457", "0.0216"),
}


def exact_fcz(vehicle, v):
    a, b, c, d = (Fraction(x) for x in TABLE[vehicle])
    v = Fraction(v)
    return float(a + b / v + c * v + d * v * v)


def test_six_vehicle_types():
    assert {v.value for v in VehicleType} == set(TABLE)
    assert set(HERA_CURVES) == set(VehicleType)


@pytest.mark.parametrize("vehicle", list(TABLE))
@pytest.mark.parametrize("v", ["5", "17.5", "42", "63.75", "83.333", "130"])
def test_curve_coefficients_match_table(vehicle, v):
    assert fcz(SAMPLE, vehicle, float(v)) == pytest.approx(exact_fcz(vehicle, v), rel=1e-12)


@pytest.mark.parametrize("vehicle,v,expected", [
    ("passenger_car", 83.333, 44.652),
    ("passenger_car", 63.75, 44.997),
    ("passenger_car", 60.0, 45.567),
    ("motorcycle", 60.0, 26.280),
])
def test_hand_evaluated_points(vehicle, v, expected):
    assert fcz(SAMPLE, vehicle, v) == pytest.approx(expected, abs=0.01)


def test_light_duty_b_is_verbatim():
    assert HERA_CURVES[VehicleType.LIGHT_DUTY].b == -0.0000106


@pytest.mark.parametrize("v", [0.0, 0.99, 130.01, -5.0])
def test_speed_domain(v):
    with pytest.raises(FuelDomainError):
        fcz(SAMPLE, "passenger_car", v)
    with pytest.raises(FuelDomainError):
        rgf(SAMPLE, "passenger_car", v, 2)


def test_fcz_positive_on_scan():
    speeds = np.arange(5.0, 130.0 + 1e-9, 0.5)
    for vehicle in VehicleType:
        values = np.array([fcz(SAMPLE, vehicle, float(v)) for v in speeds])
        assert np.isfinite(values).all()
        assert (values > 0).all()


@pytest.mark.parametrize("model", [SAMPLE, IDENTITY], ids=["sample", "identity"])
def test_flat_class_is_identity(model):
    for vehicle in VehicleType:
        for v in range(10, 131, 10):
            assert rgf(model, vehicle, float(v), GradientClass.FLAT) == 1.0


def test_sample_row_arithmetic():
    assert rgf(SAMPLE, "passenger_car", 50.0, 2) == pytest.approx(1.2, abs=1e-12)
    assert rgf(SAMPLE, "passenger_car", 50.0, 4) >= rgf(SAMPLE, "passenger_car", 50.0, 2)


def test_sample_table_monotone_in_gradient():
    for vehicle in VehicleType:
        for v in range(5, 131, 5):
            values = [rgf(SAMPLE, vehicle, float(v), g) for g in GradientClass]
            assert values == sorted(values)
            assert all(x > 0 for x in values)


def test_identity_table_is_one_everywhere():
    for vehicle in VehicleType:
        for g in GradientClass:
            assert rgf(IDENTITY, vehicle, 37.0, g) == 1.0


@pytest.mark.parametrize("g,cls", [
    (0.0, 0), (0.9, 0), (1.0, 0), (-1.0, 0), (1.01, 2), (3.0, 2), (3.2, 4), (5.0, 4),
    (5.5, 6), (12.0, 6), (-2.5, -2), (-3.0, -2), (-7.0, -6), (-30.0, -6),
])
def test_nearest_class(g, cls):
    assert GradientClass.nearest(g) == cls
    assert int(nearest_class_array([g])[0]) == cls


def test_fuel_rate_uses_nearest_class():
    v = 45.0
    base = fcz(SAMPLE, "passenger_car", v)
    assert fuel_rate(SAMPLE, "passenger_car", v, 0.0) == base
    assert fuel_rate(SAMPLE, "passenger_car", v, 0.9) == base
    assert fuel_rate(SAMPLE, "passenger_car", v, 1.0) == base
    assert fuel_rate(SAMPLE, "passenger_car", v, 2.2) == pytest.approx(
        base * rgf(SAMPLE, "passenger_car", v, 2), rel=1e-15)
    with pytest.raises(ValueError):
        fuel_rate(SAMPLE, "passenger_car", v, float("nan"))


def test_fuel_rate_flat_equals_fcz_everywhere():
    for vehicle in VehicleType:
        for v in np.arange(1.0, 130.0, 3.7):
            assert fuel_rate(SAMPLE, vehicle, float(v), 0.0) == fcz(SAMPLE, vehicle, float(v))


def test_vectorised_rate_matches_scalar():
    rng = np.random.default_rng(4)
    v = rng.uniform(1, 130, 500)
    g = rng.uniform(-12, 12, 500)
    for vehicle in VehicleType:
        got = SAMPLE.fuel_rate_array(vehicle, v, g)
        want = [fuel_rate(SAMPLE, vehicle, float(a), float(b)) for a, b in zip(v, g)]
        np.testing.assert_allclose(got, want, rtol=1e-13)


def test_liters():
    assert grams_to_liters(SAMPLE, 0.0) == 0.0
    assert grams_to_liters(SAMPLE, 740.0) == 1.0
    grams = 17 * fcz(SAMPLE, "passenger_car", 63.75)
    assert grams == pytest.approx(764.95, abs=0.01)
    assert grams_to_liters(SAMPLE, grams) == pytest.approx(1.03, abs=0.01)
    with pytest.raises(ValueError):
        grams_to_liters(SAMPLE, -1.0)


def test_liters_roundtrip():
    rng = np.random.default_rng(8)
    for x in rng.uniform(0, 1e4, 1000):
        assert grams_to_liters(SAMPLE, SAMPLE.liters_to_grams(x)) == pytest.approx(x, rel=1e-12)


def test_missing_row_is_config_error():
    model = FuelModel(rgf_table={})
    assert model.rgf("bus", 50.0, 0) == 1.0
    with pytest.raises(ConfigError):
        model.rgf("bus", 50.0, 2)


def test_validation_rejects_bad_rows():
    with pytest.raises(ConfigError):
        parse_fuel_config({"rgf": {"bus": {"0": {"A0": 1.1}}}})
    with pytest.raises(ConfigError):
        parse_fuel_config({"rgf": {"bus": {"+2": {"A0": 1.0, "A1": -0.01}}}})  # negative by 100 km/h
    with pytest.raises(ConfigError):
        parse_fuel_config({"rgf": {"bus": {"+3": {"A0": 1.0}}}})
    with pytest.raises(ConfigError):
        parse_fuel_config({"rgf": {"tram": {"+2": {"A0": 1.0}}}})
    with pytest.raises(ConfigError):
        parse_fuel_config({"rgf": {"bus": {"+2": {"A1": 0.1}}}})
    with pytest.raises(ConfigError):
        parse_fuel_config({"fuel_density_g_per_l": 0})
    with pytest.raises(ConfigError):
        parse_fuel_config({"fcz": {"bus": {"a": 1, "b": 2, "c": 3, "d": 4}}})
    with pytest.raises(ConfigError):
        parse_fuel_config({"fuel": 1})


def test_load_custom_file(tmp_path):
    p = tmp_path / "coeffs.toml"
    p.write_text('fuel_density_g_per_l = 750\n[rgf.bus."+2"]\nA0 = 1.3\nA2 = 0.0001\n')
    model = load_fuel_model(p)
    assert model.fuel_density == 750
    assert model.rgf("bus", 10.0, 2) == pytest.approx(1.31)
    with pytest.raises(ConfigError):
        load_fuel_model(tmp_path / "absent.toml")
    (tmp_path / "bad.toml").write_text("this is = = not toml")
    with pytest.raises(ConfigError):
        load_fuel_model(tmp_path / "bad.toml")


def test_scaled_model():
    doubled = SAMPLE.scaled(2.0)
    assert doubled.fuel_rate("bus", 40.0, 3.0) == pytest.approx(2 * SAMPLE.fuel_rate("bus", 40.0, 3.0), rel=1e-14)
    with pytest.raises(ConfigError):
        builtin_fuel_model("nonexistent")
