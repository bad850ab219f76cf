"""Encoded polyline (precision 1e-5) for compact route geometry.

Each coordinate is scaled by 10**5, rounded half away from zero, and
written as a chain of 5-bit groups mapped to characters 63..126. Points
after the first are stored as deltas from the previous rounded point.
"""
from __future__ import annotations

import math

from . import kernels
from .errors import PolylineDecodeError
from .geo import GeoPoint

FACTOR = 10**5


def _round(x: float) -> int:
    return int(math.copysign(math.floor(abs(x) * FACTOR + 0.5), x))


def encode_number(a: int) -> str:
    """Encode one signed integer as a polyline chunk."""
    try:
        return kernels.encode_ints([int(a)])
    except OverflowError as exc:
        raise ValueError(str(exc)) from None


def decode_number(chunk: str) -> int:
    values = kernels.decode_ints(chunk)
    if len(values) != 1:
        raise PolylineDecodeError(f"expected one number, found {len(values)}", 0)
    return values[0]


def encode_polyline(points) -> str:
    points = list(points)
    if not points:
        raise ValueError("cannot encode an empty polyline")
    deltas = []
    prev_lat = prev_lon = 0
    for p in points:
        lat, lon = _round(p.lat), _round(p.lon)
        deltas.append(lat - prev_lat)
        deltas.append(lon - prev_lon)
        prev_lat, prev_lon = lat, lon
    return kernels.encode_ints(deltas)


def decode_polyline(text: str) -> list[GeoPoint]:
    values = kernels.decode_ints(text)
    if len(values) % 2:
        raise PolylineDecodeError("latitude without a longitude", len(text))
    points = []
    lat = lon = 0
    for i in range(0, len(values), 2):
        lat += values[i]
        lon += values[i + 1]
        points.append(GeoPoint(lat / FACTOR, lon / FACTOR))
    return points
