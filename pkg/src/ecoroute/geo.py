"""Geographic primitives: points, great-circle distance and bearing."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EARTH_RADIUS_M = 6_371_000.0


@dataclass(frozen=True, slots=True)
class GeoPoint:
    """A WGS84 position in degrees."""

    lat: float
    lon: float

    def __post_init__(self):
        if not (-90.0 <= self.lat <= 90.0):
            raise ValueError(f"latitude {self.lat} outside [-90, 90]")
        if not (-180.0 <= self.lon <= 180.0):
            raise ValueError(f"longitude {self.lon} outside [-180, 180]")

    @classmethod
    def parse(cls, text: str) -> GeoPoint:
        """Parse a ``"lat,lon"`` pair."""
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'lat,lon', got {text!r}")
        return cls(float(parts[0]), float(parts[1]))

    def __str__(self):
        return f"{self.lat:.5f},{self.lon:.5f}"


def haversine(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance in meters on a sphere of radius 6,371 km."""
    return haversine_m(a.lat, a.lon, b.lat, b.lon)


def haversine_m(lat1, lon1, lat2, lon2):
    """Scalar or array haversine distance in meters."""
    if np.ndim(lat1) or np.ndim(lat2):
        phi1 = np.radians(lat1)
        phi2 = np.radians(lat2)
        h = np.sin((phi2 - phi1) / 2) ** 2 + np.cos(phi1) * np.cos(phi2) * np.sin(
            np.radians(np.asarray(lon2) - lon1) / 2
        ) ** 2
        return 2 * EARTH_RADIUS_M * np.arcsin(np.sqrt(np.clip(h, 0.0, 1.0)))
    phi1 = math.radians(lat1)
    phi2 = math.radians(lat2)
    h = math.sin((phi2 - phi1) / 2) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(
        math.radians(lon2 - lon1) / 2
    ) ** 2
    return 2 * EARTH_RADIUS_M * math.asin(math.sqrt(min(1.0, max(0.0, h))))


def bearing(a: GeoPoint, b: GeoPoint) -> float:
    """Initial great-circle bearing from ``a`` to ``b``, degrees clockwise from north in [0, 360)."""
    if a == b:
        raise ValueError("bearing undefined for identical points")
    phi1 = math.radians(a.lat)
    phi2 = math.radians(b.lat)
    dlon = math.radians(b.lon - a.lon)
    y = math.sin(dlon) * math.cos(phi2)
    x = math.cos(phi1) * math.sin(phi2) - math.sin(phi1) * math.cos(phi2) * math.cos(dlon)
    deg = math.degrees(math.atan2(y, x)) % 360.0
    # -0.0 % 360 and tiny negatives can round up to exactly 360.0
    return 0.0 if deg >= 360.0 else deg
