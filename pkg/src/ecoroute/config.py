"""Engine configuration and the loaded, shareable routing engine."""
from __future__ import annotations

import logging
import os
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .dem import DemStore
from .errors import ConfigError
from .fuel import FuelModel, VehicleType, builtin_fuel_model, load_fuel_model
from .geocoder import GazetteerGeocoder
from .graph import RoadGraph, build_graph
from .itinerary import build_itinerary
from .osm import parse_osm
from .router import DEFAULT_PENALTY_K, EdgeCosts, Metric, RouteQuery, edge_costs, route
from .traffic import VelocityProfile, load_profiles

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

log = logging.getLogger(__name__)

CONFIG_ENV = "ECOROUTE_CONFIG"
BUILTIN_PREFIX = "builtin:"


@dataclass(frozen=True)
class EngineConfig:
    osm: Path
    dem_dir: Optional[Path] = None
    fuel: str = "builtin:sample"
    traffic: Optional[Path] = None
    gazetteer: Optional[Path] = None
    vehicle: VehicleType = VehicleType.PASSENGER_CAR
    metric: Metric = Metric.FUEL
    gradient_penalty_k: float = DEFAULT_PENALTY_K
    city: Optional[str] = None
    strict_osm: bool = False
    listen: str = "127.0.0.1:8080"

    def validate(self):
        """Fail fast: every referenced file must exist and parse."""
        if not self.osm.is_file():
            raise ConfigError(f"OSM extract not found: {self.osm}")
        if self.dem_dir is not None and not self.dem_dir.is_dir():
            raise ConfigError(f"DEM directory not found: {self.dem_dir}")
        for label, p in (("traffic profiles", self.traffic), ("gazetteer", self.gazetteer)):
            if p is not None and not p.is_file():
                raise ConfigError(f"{label} file not found: {p}")
        if self.gradient_penalty_k < 0:
            raise ConfigError("gradient_penalty_k must be non-negative")
        fuel = self.load_fuel()
        velocity = self.load_velocity()
        if self.city is not None and self.city.lower() not in velocity.profiles:
            raise ConfigError(f"default city {self.city!r} has no traffic profile")
        if self.gazetteer is not None:
            GazetteerGeocoder.from_file(self.gazetteer)
        host, _, port = self.listen.rpartition(":")
        if not host or not port.isdigit():
            raise ConfigError(f"listen address must be host:port, got {self.listen!r}")
        return fuel, velocity

    def load_fuel(self) -> FuelModel:
        if self.fuel.startswith(BUILTIN_PREFIX):
            return builtin_fuel_model(self.fuel[len(BUILTIN_PREFIX):])
        return load_fuel_model(self.fuel)

    def load_velocity(self) -> VelocityProfile:
        return VelocityProfile(profiles=load_profiles(self.traffic))

    @property
    def host_port(self):
        host, _, port = self.listen.rpartition(":")
        return host, int(port)


def _path(base, value):
    if value is None:
        return None
    p = Path(value)
    return p if p.is_absolute() else base / p


def load_config(path) -> EngineConfig:
    """Read a TOML engine config; relative paths resolve against its directory."""
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    base = path.parent
    files = data.get("data", {})
    defaults = data.get("defaults", {})
    server = data.get("server", {})
    if "osm" not in files:
        raise ConfigError(f"{path}: [data] osm is required")
    fuel = files.get("fuel", "builtin:sample")
    if not fuel.startswith(BUILTIN_PREFIX):
        fuel = str(_path(base, fuel))
    try:
        return EngineConfig(
            osm=_path(base, files["osm"]),
            dem_dir=_path(base, files.get("dem_dir")),
            fuel=fuel,
            traffic=_path(base, files.get("traffic")),
            gazetteer=_path(base, files.get("gazetteer")),
            vehicle=VehicleType(defaults.get("vehicle", "passenger_car")),
            metric=Metric(defaults.get("metric", "fuel")),
            gradient_penalty_k=float(defaults.get("gradient_penalty_k", DEFAULT_PENALTY_K)),
            city=defaults.get("city") or None,
            strict_osm=bool(files.get("strict_osm", False)),
            listen=str(server.get("listen", "127.0.0.1:8080")),
        )
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def find_config(explicit=None) -> Path:
    value = explicit or os.environ.get(CONFIG_ENV)
    if not value:
        raise ConfigError(f"no config given: pass --config or set {CONFIG_ENV}")
    return Path(value)


class Engine:
    """Graph, DEM and models loaded once and shared read-only by all queries."""

    def __init__(self, graph: RoadGraph, fuel_model: FuelModel, velocity: VelocityProfile,
                 dem: DemStore | None = None, gazetteer: GazetteerGeocoder | None = None,
                 config: EngineConfig | None = None):
        self.graph = graph
        self.fuel_model = fuel_model
        self.velocity = velocity
        self.dem = dem if dem is not None else DemStore()
        self.gazetteer = gazetteer
        self.config = config
        self.k = config.gradient_penalty_k if config else DEFAULT_PENALTY_K
        self._costs = {}
        self._lock = threading.Lock()

    @classmethod
    def load(cls, config: EngineConfig) -> Engine:
        fuel, velocity = config.validate()
        dem = DemStore.from_directory(config.dem_dir) if config.dem_dir else DemStore()
        nodes, ways = parse_osm(config.osm, strict=config.strict_osm)
        graph = build_graph(nodes, ways, elevation=dem.bilinear if len(dem) else None)
        gazetteer = GazetteerGeocoder.from_file(config.gazetteer) if config.gazetteer else None
        log.info("engine ready: %d nodes, %d edges, %d DEM tiles",
                 graph.num_nodes, graph.num_edges, len(dem))
        return cls(graph, fuel, velocity, dem, gazetteer, config)

    def query(self, source, destination, via=(), vehicle=None, metric=None, hour=None, city=None):
        cfg = self.config
        return RouteQuery(
            source, destination, tuple(via),
            vehicle=vehicle or (cfg.vehicle if cfg else VehicleType.PASSENGER_CAR),
            metric=metric or (cfg.metric if cfg else Metric.FUEL),
            depart_hour=hour,
            city_profile=city if city is not None else (cfg.city if cfg else None),
        )

    def costs(self, vehicle, city, hour) -> EdgeCosts:
        key = (VehicleType(vehicle), city.lower() if city else None, hour if city else None)
        with self._lock:
            cached = self._costs.get(key)
        if cached is not None:
            return cached
        table = self.velocity.table(city, hour)
        computed = edge_costs(self.graph, vehicle, table, self.fuel_model, self.k)
        with self._lock:
            return self._costs.setdefault(key, computed)

    def route(self, query: RouteQuery):
        costs = self.costs(query.vehicle, query.city_profile, query.depart_hour)
        return route(self.graph, query, self.fuel_model, self.velocity, self.k, costs=costs)

    def itinerary(self, r):
        return build_itinerary(r, self.graph.way_names)
