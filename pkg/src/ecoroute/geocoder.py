"""Address to coordinate lookup.

Only an offline gazetteer is shipped. A networked provider plugs in by
implementing :class:`Geocoder` and raising :class:`GeocoderUnavailable` on
transport failures so callers can tell "retry later" from "no such place".
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Protocol

from .errors import ConfigError, GeocoderUnavailable
from .geo import GeoPoint

__all__ = ["GazetteerGeocoder", "GeocodeResult", "Geocoder", "GeocoderUnavailable", "geocode"]


@dataclass(frozen=True)
class GeocodeResult:
    query: str
    position: GeoPoint
    provider: str


class Geocoder(Protocol):
    name: str

    def geocode(self, address: str) -> Optional[GeocodeResult]:
        ...


class GazetteerGeocoder:
    """Case-insensitive exact-match lookup in a ``name,lat,lon`` file."""

    name = "gazetteer"

    def __init__(self, entries: dict[str, GeoPoint]):
        self._entries = dict(entries)

    def __len__(self):
        return len(self._entries)

    @classmethod
    def from_text(cls, text: str, source="<text>") -> GazetteerGeocoder:
        entries = {}
        for lineno, row in enumerate(csv.reader(io.StringIO(text)), 1):
            if not row or not "".join(row).strip() or row[0].lstrip().startswith("#"):
                continue
            if len(row) != 3:
                raise ConfigError(f"{source} line {lineno}: expected name,lat,lon")
            try:
                pos = GeoPoint(float(row[1]), float(row[2]))
            except ValueError as exc:
                raise ConfigError(f"{source} line {lineno}: {exc}") from None
            entries[row[0].strip().lower()] = pos
        return cls(entries)

    @classmethod
    def from_file(cls, path) -> GazetteerGeocoder:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read gazetteer {path}: {exc}") from exc
        return cls.from_text(text, source=str(path))

    def geocode(self, address: str) -> Optional[GeocodeResult]:
        return geocode(self, address)

    def lookup(self, address):
        return self._entries.get(address.strip().lower())


def geocode(client, address: str) -> Optional[GeocodeResult]:
    """Resolve ``address`` through ``client``; None when the place is unknown."""
    if not address or not address.strip():
        raise ValueError("address must be non-empty")
    if isinstance(client, GazetteerGeocoder):
        pos = client.lookup(address)
        return None if pos is None else GeocodeResult(address, pos, client.name)
    return client.geocode(address)
