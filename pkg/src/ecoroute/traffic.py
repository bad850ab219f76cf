"""Road-class speeds and city/hour traffic slowdown.

A profile stores, per sampled hour, the mean extra time to cover 1 km
relative to 3 AM: ``r(h) = (t_h - t_3) / t_3``. Speeds at hour ``h`` are
the base speeds divided by ``1 + r(h)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from types import MappingProxyType

from .errors import ConfigError
from .osm import ROAD_CLASSES, RoadClass

REFERENCE_HOUR = 3
MIN_SPEED_KMH = 1.0

BASE_SPEEDS = MappingProxyType({
    RoadClass.MOTORWAY: 90.0,
    RoadClass.MOTORWAY_LINK: 45.0,
    RoadClass.TRUNK: 85.0,
    RoadClass.TRUNK_LINK: 40.0,
    RoadClass.PRIMARY: 65.0,
    RoadClass.PRIMARY_LINK: 30.0,
    RoadClass.SECONDARY: 55.0,
    RoadClass.SECONDARY_LINK: 25.0,
    RoadClass.TERTIARY: 40.0,
    RoadClass.TERTIARY_LINK: 20.0,
    RoadClass.UNCLASSIFIED: 25.0,
    RoadClass.RESIDENTIAL: 25.0,
    RoadClass.LIVING_STREET: 10.0,
    RoadClass.SERVICE: 15.0,
})


def check_table(table):
    """Validate a road-class -> km/h mapping and return it as a plain dict."""
    table = {RoadClass(k): float(v) for k, v in table.items()}
    missing = [rc.value for rc in ROAD_CLASSES if rc not in table]
    if missing:
        raise ConfigError(f"velocity table lacks {', '.join(missing)}")
    bad = [rc.value for rc, v in table.items() if not v > 0]
    if bad:
        raise ConfigError(f"non-positive speed for {', '.join(bad)}")
    return table


@dataclass(frozen=True)
class TrafficProfile:
    city: str
    samples: dict = field(default_factory=dict)  # hour -> mean ratio
    stddev: dict = field(default_factory=dict)  # hour -> std deviation, reporting only

    def __post_init__(self):
        for h, r in self.samples.items():
            if not (0 <= h <= 23):
                raise ConfigError(f"{self.city}: hour {h} outside 0..23")
            if r < 0:
                raise ConfigError(f"{self.city}: negative slowdown ratio at hour {h}")
            if h == REFERENCE_HOUR and r != 0:
                raise ConfigError(f"{self.city}: ratio at {REFERENCE_HOUR}:00 must be 0")


def _circular(a, b):
    d = abs(a - b) % 24
    return min(d, 24 - d)


def slowdown_ratio(profile: TrafficProfile, hour: int) -> float:
    """Mean ratio at the sampled hour nearest ``hour`` (circular; ties to the earlier hour of day)."""
    if not profile.samples:
        raise ConfigError(f"traffic profile {profile.city!r} has no samples")
    if not (0 <= hour <= 23):
        raise ValueError(f"hour {hour} outside 0..23")
    h = min(profile.samples, key=lambda s: (_circular(s, hour), s))
    return profile.samples[h]


def scale_table(base, ratio: float):
    """Every speed divided by ``1 + ratio``, floored at 1 km/h."""
    if ratio < 0:
        raise ValueError("slowdown ratio must be non-negative")
    return {rc: max(MIN_SPEED_KMH, v / (1.0 + ratio)) for rc, v in base.items()}


def effective_table(base, profile: TrafficProfile, hour: int):
    return scale_table(base, slowdown_ratio(profile, hour))


def parse_profiles(text: str) -> dict:
    """Parse the profile format.

    ::

        city = bengaluru
        9  = 0.846, 0.232
        17 = 0.934, 0.213

    ``#`` starts a comment. The 3 AM reference sample is implied.
    """
    profiles = {}
    city = None
    samples = stddev = None

    def flush():
        if city is not None:
            samples.setdefault(REFERENCE_HOUR, 0.0)
            stddev.setdefault(REFERENCE_HOUR, 0.0)
            profiles[city] = TrafficProfile(city, samples, stddev)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        if not sep:
            raise ConfigError(f"traffic profiles line {lineno}: expected 'key = value'")
        if key.lower() == "city":
            flush()
            city = value.lower()
            if city in profiles:
                raise ConfigError(f"traffic profiles line {lineno}: duplicate city {value!r}")
            samples, stddev = {}, {}
            continue
        if city is None:
            raise ConfigError(f"traffic profiles line {lineno}: sample before any 'city ='")
        try:
            hour = int(key)
            fields = [float(x) for x in value.split(",")]
        except ValueError:
            raise ConfigError(f"traffic profiles line {lineno}: bad sample {line!r}") from None
        if len(fields) not in (1, 2):
            raise ConfigError(f"traffic profiles line {lineno}: expected 'mean, stddev'")
        if hour in samples:
            raise ConfigError(f"traffic profiles line {lineno}: duplicate hour {hour}")
        samples[hour] = fields[0]
        stddev[hour] = fields[1] if len(fields) == 2 else 0.0
    flush()
    return profiles


def load_profiles(path=None) -> dict:
    """Load profiles from ``path``, or the packaged five-city dataset."""
    if path is None:
        text = (resources.files("ecoroute") / "data" / "traffic_profiles.txt").read_text("utf-8")
    else:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read traffic profiles {path}: {exc}") from exc
    return parse_profiles(text)


@dataclass(frozen=True)
class VelocityProfile:
    """Base road-class speeds together with the city traffic profiles."""

    base: dict = field(default_factory=lambda: dict(BASE_SPEEDS))
    profiles: dict = field(default_factory=dict)

    def __post_init__(self):
        check_table(self.base)

    def table(self, city=None, hour=None):
        """Speeds for a city and hour; the base table when either is unset."""
        if city is None or hour is None:
            return dict(self.base)
        try:
            profile = self.profiles[city.lower()]
        except KeyError:
            raise ConfigError(f"unknown traffic profile {city!r}") from None
        return effective_table(self.base, profile, hour)
