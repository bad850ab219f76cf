"""SRTM elevation tiles in ArcInfo ASCII grid format.

Grid values are point samples on a lattice: the value at row ``r``,
column ``c`` sits at longitude ``xllcorner + c * cellsize`` and latitude
``yllcorner + (nrows - 1 - r) * cellsize`` (row 0 is the northernmost).
"""
from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DemDimensionError, DemParseError, EcoRouteError
from .geo import GeoPoint, haversine

log = logging.getLogger(__name__)

DEFAULT_NODATA = -9999.0
_HEADER_KEYS = ("ncols", "nrows", "xllcorner", "yllcorner", "cellsize", "nodata_value")


@dataclass(frozen=True, eq=False)
class DemTile:
    ncols: int
    nrows: int
    xllcorner: float
    yllcorner: float
    cellsize: float
    nodata_value: float
    grid: np.ndarray

    def __post_init__(self):
        if self.ncols <= 0 or self.nrows <= 0:
            raise DemDimensionError(f"non-positive grid size {self.nrows}x{self.ncols}")
        if not self.cellsize > 0:
            raise DemParseError(f"cellsize must be positive, got {self.cellsize}")
        if self.grid.shape != (self.nrows, self.ncols):
            raise DemDimensionError(
                f"grid shape {self.grid.shape} does not match header {self.nrows}x{self.ncols}"
            )
        self.grid.setflags(write=False)

    @property
    def bounds(self):
        """Coverage box ``(west, south, east, north)``."""
        return (
            self.xllcorner,
            self.yllcorner,
            self.xllcorner + self.ncols * self.cellsize,
            self.yllcorner + self.nrows * self.cellsize,
        )

    def covers(self, p: GeoPoint) -> bool:
        west, south, east, north = self.bounds
        return west <= p.lon <= east and south <= p.lat <= north

    def point(self, row, col) -> GeoPoint:
        """Geographic position of the lattice sample at ``(row, col)``."""
        return GeoPoint(
            self.yllcorner + (self.nrows - 1 - row) * self.cellsize,
            self.xllcorner + col * self.cellsize,
        )

    def value(self, row, col):
        v = float(self.grid[row, col])
        return None if v == self.nodata_value else v

    def _fractional(self, p):
        # column counted eastward from the west edge, row southward from the top sample
        fc = (p.lon - self.xllcorner) / self.cellsize
        fr = (self.yllcorner + (self.nrows - 1) * self.cellsize - p.lat) / self.cellsize
        return fr, fc

    def nearest(self, p: GeoPoint):
        fr, fc = self._fractional(p)
        # round half down so exact ties pick the northern row / western column
        r = min(max(math.ceil(fr - 0.5), 0), self.nrows - 1)
        c = min(max(math.ceil(fc - 0.5), 0), self.ncols - 1)
        return self.value(r, c)

    def bilinear(self, p: GeoPoint):
        fr, fc = self._fractional(p)
        eps = 1e-9
        if not (-eps <= fr <= self.nrows - 1 + eps and -eps <= fc <= self.ncols - 1 + eps):
            return None
        fr = min(max(fr, 0.0), self.nrows - 1)
        fc = min(max(fc, 0.0), self.ncols - 1)
        c1 = min(int(math.floor(fc)), max(self.ncols - 2, 0))
        c2 = min(c1 + 1, self.ncols - 1)
        r_south = min(int(math.ceil(fr)), self.nrows - 1)
        r_north = max(r_south - 1, 0)
        if r_south == 0 and self.nrows > 1:
            r_south, r_north = 1, 0
        a11 = self.value(r_south, c1)
        a21 = self.value(r_south, c2)
        a12 = self.value(r_north, c1)
        a22 = self.value(r_north, c2)
        if a11 is None or a21 is None or a12 is None or a22 is None:
            return None
        x, y = p.lon, p.lat
        a1 = self.xllcorner + c1 * self.cellsize
        a2 = self.xllcorner + c2 * self.cellsize
        b1 = self.yllcorner + (self.nrows - 1 - r_south) * self.cellsize
        b2 = self.yllcorner + (self.nrows - 1 - r_north) * self.cellsize
        # interpolate along longitude on both latitude lines, then along latitude
        if a2 == a1:
            e_b1, e_b2 = a11, a12
        else:
            e_b1 = (a2 - x) / (a2 - a1) * a11 + (x - a1) / (a2 - a1) * a21
            e_b2 = (a2 - x) / (a2 - a1) * a12 + (x - a1) / (a2 - a1) * a22
        if b2 == b1:
            return e_b1
        return (b2 - y) / (b2 - b1) * e_b1 + (y - b1) / (b2 - b1) * e_b2


def _read_text(source):
    if isinstance(source, (bytes, bytearray)):
        return bytes(source).decode("ascii")
    if isinstance(source, os.PathLike) or (isinstance(source, str) and "\n" not in source):
        return Path(source).read_text(encoding="ascii")
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode("ascii") if isinstance(data, bytes) else data


def parse_asc(source) -> DemTile:
    """Parse an ArcInfo ASCII grid from bytes, text, a path or a file object."""
    text = _read_text(source)
    lines = text.splitlines()
    header = {}
    i = 0
    while i < len(lines):
        parts = lines[i].split()
        if not parts:
            i += 1
            continue
        key = parts[0].lower()
        if key not in _HEADER_KEYS:
            break
        if len(parts) != 2:
            raise DemParseError(f"malformed header line {lines[i]!r}")
        if key in header:
            raise DemParseError(f"duplicate header key {parts[0]!r}")
        header[key] = parts[1]
        i += 1
    missing = [k for k in _HEADER_KEYS[:5] if k not in header]
    if missing:
        raise DemParseError(f"missing header key(s) {', '.join(missing)}")
    try:
        ncols = int(header["ncols"])
        nrows = int(header["nrows"])
        xll = float(header["xllcorner"])
        yll = float(header["yllcorner"])
        cellsize = float(header["cellsize"])
        nodata = float(header.get("nodata_value", DEFAULT_NODATA))
    except ValueError as exc:
        raise DemParseError(f"bad header value: {exc}") from exc

    tokens = "\n".join(lines[i:]).split()
    if len(tokens) != ncols * nrows:
        raise DemDimensionError(
            f"header declares {nrows}x{ncols} = {nrows * ncols} values, body has {len(tokens)}"
        )
    try:
        values = np.array(tokens, dtype=np.float64)
    except ValueError:
        for k, tok in enumerate(tokens):
            try:
                float(tok)
            except ValueError:
                raise DemParseError(f"non-numeric cell {tok!r}", row=k // ncols, col=k % ncols) from None
        raise
    return DemTile(ncols, nrows, xll, yll, cellsize, nodata, values.reshape(nrows, ncols))


class DemStore:
    """Non-overlapping tiles; a query goes to the tile whose box covers it."""

    def __init__(self, tiles=()):
        self.tiles = []
        for t in tiles:
            self.add(t)

    def add(self, tile: DemTile):
        w, s, e, n = tile.bounds
        for other in self.tiles:
            ow, os_, oe, on = other.bounds
            if w < oe and ow < e and s < on and os_ < n:
                raise EcoRouteError(f"tile {tile.bounds} overlaps {other.bounds}")
        self.tiles.append(tile)
        self.tiles.sort(key=lambda t: (t.xllcorner, t.yllcorner))

    @classmethod
    def from_directory(cls, path) -> DemStore:
        files = sorted(Path(path).glob("*.asc"))
        log.info("loading %d DEM tile(s) from %s", len(files), path)
        return cls(parse_asc(f) for f in files)

    def __len__(self):
        return len(self.tiles)

    def tile_for(self, p: GeoPoint):
        for t in self.tiles:
            if t.covers(p):
                return t
        return None

    def nearest(self, p):
        return elevation_nearest(self, p)

    def bilinear(self, p):
        return elevation_bilinear(self, p)


def elevation_nearest(store: DemStore, p: GeoPoint):
    """Elevation of the nearest lattice sample, or None when unknown."""
    tile = store.tile_for(p)
    return None if tile is None else tile.nearest(p)


def elevation_bilinear(store: DemStore, p: GeoPoint):
    """Bilinear elevation from the four surrounding samples, or None when any is missing."""
    tile = store.tile_for(p)
    return None if tile is None else tile.bilinear(p)


def gradient_percent(a: GeoPoint, b: GeoPoint, store: DemStore):
    """Percent grade from ``a`` to ``b`` using bilinear elevations; None if either is unknown."""
    if a == b:
        raise ValueError("gradient undefined for a zero-length segment")
    ea = elevation_bilinear(store, a)
    eb = elevation_bilinear(store, b)
    if ea is None or eb is None:
        return None
    return 100.0 * (eb - ea) / haversine(a, b)


def normalize_profile(elevations, delta_e=5.0):
    """Step an elevation profile so it only moves on rises or drops of at least ``delta_e``."""
    if delta_e <= 0:
        raise ValueError("delta_e must be positive")
    if not len(elevations):
        raise ValueError("empty elevation profile")
    out = [elevations[0]]
    for h in elevations[1:]:
        out.append(h if abs(h - out[-1]) >= delta_e else out[-1])
    return out
