"""HERA average-speed fuel consumption with a road gradient correction.

Fuel rate (grams per vehicle-km) is the zero-gradient curve
``a + b/V + c*V + d*V**2`` multiplied by a degree-6 road gradient factor
whose coefficients depend on vehicle type and gradient class.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ConfigError, FuelDomainError

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

V_MIN = 1.0
V_MAX = 130.0
DEFAULT_DENSITY_G_PER_L = 740.0


class VehicleType(str, Enum):
    MOTORCYCLE = "motorcycle"
    PASSENGER_CAR = "passenger_car"
    LIGHT_DUTY = "light_duty"
    RIGID_TRUCK = "rigid_truck"
    ARTICULATED_TRUCK = "articulated_truck"
    BUS = "bus"


class GradientClass(IntEnum):
    DOWN_6 = -6
    DOWN_4 = -4
    DOWN_2 = -2
    FLAT = 0
    UP_2 = 2
    UP_4 = 4
    UP_6 = 6

    @classmethod
    def nearest(cls, gradient: float) -> GradientClass:
        """Nearest class to a percent gradient; halfway values go toward 0."""
        steps = math.ceil(abs(gradient) / 2.0 - 0.5)
        steps = min(steps, 3)
        return cls(int(math.copysign(2 * steps, gradient)) if steps else 0)


GRADIENT_CLASSES = tuple(GradientClass)


def nearest_class_array(gradient):
    g = np.asarray(gradient, dtype=np.float64)
    steps = np.minimum(np.ceil(np.abs(g) / 2.0 - 0.5), 3.0)
    return (np.sign(g) * 2 * steps).astype(np.int64)


@dataclass(frozen=True)
class FczCurve:
    """Zero-gradient consumption ``a + b/V + c*V + d*V**2`` in g/km, V in km/h."""

    a: float
    b: float
    c: float
    d: float

    def __call__(self, v):
        return self.a + self.b / v + self.c * v + self.d * v * v

    def scaled(self, k):
        return FczCurve(self.a * k, self.b * k, self.c * k, self.d * k)


# light-duty b is printed as -0.0000106; kept verbatim
HERA_CURVES = {
    VehicleType.MOTORCYCLE: FczCurve(25.722, 276.13, -0.254, 0.00311),
    VehicleType.PASSENGER_CAR: FczCurve(54.7, 496.0, -0.542, 0.0042),
    VehicleType.LIGHT_DUTY: FczCurve(146.27, -0.0000106, -2.596, 0.01984),
    VehicleType.RIGID_TRUCK: FczCurve(152.96, 604.156, -2.295, 0.0238),
    VehicleType.ARTICULATED_TRUCK: FczCurve(332.603, 1680.879, -4.676, 0.0311),
    VehicleType.BUS: FczCurve(281.735, 4186.178, -3.457, 0.0216),
}

_IDENTITY_ROW = (1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)


def _poly(coeffs, v):
    # coeffs are A0..A6; Horner from the top
    acc = coeffs[6]
    for a in coeffs[5::-1]:
        acc = acc * v + a
    return acc


@dataclass(frozen=True)
class FuelModel:
    curves: dict = field(default_factory=lambda: dict(HERA_CURVES))
    rgf_table: dict = field(default_factory=dict)
    fuel_density: float = DEFAULT_DENSITY_G_PER_L
    label: str = "identity"

    def __post_init__(self):
        missing = [v.value for v in VehicleType if v not in self.curves]
        if missing:
            raise ConfigError(f"missing consumption curve(s): {', '.join(missing)}")
        if not self.fuel_density > 0:
            raise ConfigError("fuel density must be positive")
        for (vehicle, g), row in self.rgf_table.items():
            if len(row) != 7:
                raise ConfigError(f"RGF row {vehicle.value}/{int(g):+d} needs 7 coefficients")
            if g == GradientClass.FLAT and tuple(row) != _IDENTITY_ROW:
                raise ConfigError(f"RGF row {vehicle.value}/0 must be the identity (A0=1, rest 0)")
            if row[0] <= 0:
                raise ConfigError(f"RGF row {vehicle.value}/{int(g):+d} is not positive near V=0")
            for v in np.arange(0.5, V_MAX + 0.25, 0.5):
                if not _poly(row, float(v)) > 0:
                    raise ConfigError(
                        f"RGF row {vehicle.value}/{int(g):+d} is not positive at V={v:g} km/h"
                    )

    def coefficients(self, vehicle, g):
        vehicle = VehicleType(vehicle)
        g = GradientClass(g)
        if g == GradientClass.FLAT:
            return _IDENTITY_ROW
        try:
            return self.rgf_table[(vehicle, g)]
        except KeyError:
            raise ConfigError(f"no RGF coefficients for {vehicle.value} at {int(g):+d} %") from None

    def fcz(self, vehicle, v):
        return fcz(self, vehicle, v)

    def rgf(self, vehicle, v, g):
        return rgf(self, vehicle, v, g)

    def fuel_rate(self, vehicle, v, gradient):
        return fuel_rate(self, vehicle, v, gradient)

    def fuel_rate_array(self, vehicle, v, gradient):
        """Vectorised :func:`fuel_rate` over arrays of speeds and gradients."""
        v = np.asarray(v, dtype=np.float64)
        if v.size and (v.min() < V_MIN or v.max() > V_MAX):
            raise FuelDomainError(f"speeds must lie in [{V_MIN:g}, {V_MAX:g}] km/h")
        base = self.curves[VehicleType(vehicle)](v)
        classes = nearest_class_array(gradient)
        factor = np.ones_like(v)
        for g in np.unique(classes):
            if g == 0:
                continue
            row = self.coefficients(vehicle, int(g))
            mask = classes == g
            factor[mask] = _poly(row, v[mask])
        return base * factor

    def grams_to_liters(self, grams):
        return grams_to_liters(self, grams)

    def liters_to_grams(self, liters):
        return liters * self.fuel_density

    def scaled(self, k) -> FuelModel:
        """Every consumption curve multiplied by ``k``."""
        curves = {veh: c.scaled(k) for veh, c in self.curves.items()}
        return FuelModel(curves, dict(self.rgf_table), self.fuel_density, self.label)


def _check_speed(v):
    if not (V_MIN <= v <= V_MAX):
        raise FuelDomainError(f"speed {v} km/h outside [{V_MIN:g}, {V_MAX:g}]")


def fcz(model: FuelModel, vehicle, v: float) -> float:
    """Zero-gradient fuel consumption in g/km."""
    _check_speed(v)
    return model.curves[VehicleType(vehicle)](v)


def rgf(model: FuelModel, vehicle, v: float, g) -> float:
    """Road gradient factor for a gradient class."""
    _check_speed(v)
    return _poly(model.coefficients(vehicle, g), v)


def fuel_rate(model: FuelModel, vehicle, v: float, gradient: float) -> float:
    """Fuel consumption in g/km on a road of the given percent gradient."""
    if not math.isfinite(gradient):
        raise ValueError(f"gradient must be finite, got {gradient}")
    return fcz(model, vehicle, v) * rgf(model, vehicle, v, GradientClass.nearest(gradient))


def grams_to_liters(model: FuelModel, grams: float) -> float:
    if grams < 0:
        raise ValueError("fuel mass must be non-negative")
    return grams / model.fuel_density


def _parse_class(key):
    try:
        return GradientClass(int(key))
    except ValueError:
        raise ConfigError(f"unknown gradient class {key!r}; expected one of -6,-4,-2,0,+2,+4,+6") from None


def parse_fuel_config(data: dict, label="custom") -> FuelModel:
    """Build a :class:`FuelModel` from the decoded coefficient file."""
    allowed = {"fuel_density_g_per_l", "label", "fcz", "rgf"}
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown top-level key(s): {', '.join(sorted(unknown))}")
    density = float(data.get("fuel_density_g_per_l", DEFAULT_DENSITY_G_PER_L))

    curves = dict(HERA_CURVES)
    if "fcz" in data:
        curves = {}
        for name, row in data["fcz"].items():
            try:
                vehicle = VehicleType(name)
            except ValueError:
                raise ConfigError(f"unknown vehicle type {name!r}") from None
            if set(row) != {"a", "b", "c", "d"}:
                raise ConfigError(f"fcz.{name} needs exactly keys a, b, c, d")
            curves[vehicle] = FczCurve(*(float(row[k]) for k in "abcd"))

    table = {}
    for name, classes in data.get("rgf", {}).items():
        try:
            vehicle = VehicleType(name)
        except ValueError:
            raise ConfigError(f"unknown vehicle type {name!r}") from None
        for key, row in classes.items():
            g = _parse_class(key)
            extra = set(row) - {f"A{i}" for i in range(7)}
            if extra:
                raise ConfigError(f"rgf.{name}.{key}: unknown key(s) {', '.join(sorted(extra))}")
            if "A0" not in row:
                raise ConfigError(f"rgf.{name}.{key}: A0 is required")
            table[(vehicle, g)] = tuple(float(row.get(f"A{i}", 0.0)) for i in range(7))
    return FuelModel(curves, table, density, str(data.get("label", label)))


def load_fuel_model(path) -> FuelModel:
    """Load a TOML coefficient file (see ``data/fuel_sample.toml`` for the schema)."""
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read fuel coefficients {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return parse_fuel_config(data, label=path.stem)


def builtin_fuel_model(name="sample") -> FuelModel:
    """One of the packaged coefficient tables: ``"identity"`` or ``"sample"``."""
    ref = resources.files("ecoroute") / "data" / f"fuel_{name}.toml"
    if not ref.is_file():
        raise ConfigError(f"no packaged fuel table named {name!r}")
    with ref.open("rb") as fh:
        return parse_fuel_config(tomllib.load(fh), label=name)
