"""Least-distance, least-time and least-fuel routing over a RoadGraph."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, NamedTuple, Optional, Sequence, Union

import numpy as np

from . import kernels
from .errors import ConfigError, EmptyGraphError, RouteError
from .fuel import V_MAX, V_MIN, FuelModel, VehicleType
from .geo import GeoPoint
from .graph import Edge, RoadGraph
from .osm import ROAD_CLASSES
from .traffic import VelocityProfile

DEFAULT_PENALTY_K = 0.08
MAX_VIA = 25


class Metric(str, Enum):
    DISTANCE = "distance"
    DURATION = "duration"
    FUEL = "fuel"


@dataclass(frozen=True)
class RouteQuery:
    source: GeoPoint
    destination: GeoPoint
    via: tuple = ()
    vehicle: VehicleType = VehicleType.PASSENGER_CAR
    metric: Metric = Metric.FUEL
    depart_hour: Optional[int] = None
    city_profile: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "via", tuple(self.via))
        object.__setattr__(self, "vehicle", VehicleType(self.vehicle))
        object.__setattr__(self, "metric", Metric(self.metric))
        if len(self.via) > MAX_VIA:
            raise ValueError(f"at most {MAX_VIA} via points are supported")
        if self.depart_hour is not None and not 0 <= self.depart_hour <= 23:
            raise ValueError(f"depart_hour {self.depart_hour} outside 0..23")


def gradient_velocity_penalty(v: float, gradient: float, k: float = DEFAULT_PENALTY_K) -> float:
    """Speed on a graded segment: ``max(1, v / (1 + k * |gradient|))``."""
    if k < 0:
        raise ValueError("penalty coefficient must be non-negative")
    return max(V_MIN, v / (1.0 + k * abs(gradient)))


def _speed_for(speed_table, road_class):
    try:
        return float(speed_table[road_class])
    except KeyError:
        raise ConfigError(f"no speed configured for road class {road_class.value!r}") from None


def edge_weight(edge: Edge, metric, vehicle, speed_table, fuel_model: FuelModel,
                k: float = DEFAULT_PENALTY_K) -> float:
    """Cost of one edge: meters, seconds or grams of fuel."""
    metric = Metric(metric)
    if metric is Metric.DISTANCE:
        return edge.length
    v = gradient_velocity_penalty(_speed_for(speed_table, edge.road_class), edge.gradient, k)
    v = min(v, V_MAX)
    if metric is Metric.DURATION:
        return edge.length / (v / 3.6)
    return edge.length / 1000.0 * fuel_model.fuel_rate(vehicle, v, edge.gradient)


@dataclass(frozen=True, eq=False)
class EdgeCosts:
    """Per-edge speed, duration and fuel for one (vehicle, speed table, model) setting."""

    length: np.ndarray
    speed: np.ndarray
    duration: np.ndarray
    fuel_g: np.ndarray

    def weights(self, metric) -> np.ndarray:
        metric = Metric(metric)
        if metric is Metric.DISTANCE:
            return self.length
        if metric is Metric.DURATION:
            return self.duration
        return self.fuel_g


def edge_costs(graph: RoadGraph, vehicle, speed_table, fuel_model: FuelModel,
               k: float = DEFAULT_PENALTY_K) -> EdgeCosts:
    """Vectorised :func:`edge_weight` for every edge of ``graph``."""
    if k < 0:
        raise ValueError("penalty coefficient must be non-negative")
    per_class = np.array([_speed_for(speed_table, rc) for rc in ROAD_CLASSES])
    base = per_class[graph.edge_class]
    speed = np.clip(base / (1.0 + k * np.abs(graph.edge_gradient)), V_MIN, V_MAX)
    duration = graph.edge_length / (speed / 3.6)
    fuel_g = graph.edge_length / 1000.0 * fuel_model.fuel_rate_array(vehicle, speed, graph.edge_gradient)
    arrays = [np.ascontiguousarray(a, dtype=np.float64) for a in (graph.edge_length, speed, duration, fuel_g)]
    for a in arrays:
        a.setflags(write=False)
    return EdgeCosts(*arrays)


class PathResult(NamedTuple):
    cost: float
    edges: list
    nodes: list


WeightSpec = Union[np.ndarray, Sequence[float], Callable[[Edge], float]]


def _weight_array(graph, weight):
    if callable(weight):
        w = np.array([weight(e) for e in graph.edges()], dtype=np.float64)
    else:
        w = np.ascontiguousarray(weight, dtype=np.float64)
    if w.shape != (graph.num_edges,):
        raise ValueError(f"need {graph.num_edges} edge weights, got shape {w.shape}")
    if not np.all(np.isfinite(w)) or (w.size and w.min() < 0):
        raise ValueError("edge weights must be finite and non-negative")
    return w


def shortest_path(graph: RoadGraph, src: int, dst: int, weight: WeightSpec) -> Optional[PathResult]:
    """Minimum-weight path from ``src`` to ``dst``, or None when unreachable.

    ``weight`` is either an array with one entry per edge or a callable
    taking an :class:`Edge`. Equal-cost paths are resolved toward the
    lexicographically smallest node sequence.
    """
    n = graph.num_nodes
    if not (0 <= src < n and 0 <= dst < n):
        raise IndexError(f"node index out of range for a graph of {n} nodes")
    w = _weight_array(graph, weight)
    if src == dst:
        return PathResult(0.0, [], [src])
    found = kernels.dijkstra(graph.indptr, graph.edge_source, graph.edge_target, w, src, dst)
    if found is None:
        return None
    cost, edges = found
    nodes = [src] + [int(graph.edge_target[e]) for e in edges]
    return PathResult(float(cost), [int(e) for e in edges], nodes)


@dataclass(frozen=True)
class EdgeRecord:
    edge: int
    source: int
    target: int
    length_m: float
    speed_kmh: float
    gradient: float
    duration_s: float
    fuel_g: float
    way_id: int


@dataclass(frozen=True)
class Leg:
    source: int
    target: int
    edges: tuple

    @property
    def distance_m(self):
        return math.fsum(r.length_m for r in self.edges)

    @property
    def duration_s(self):
        return math.fsum(r.duration_s for r in self.edges)

    @property
    def fuel_g(self):
        return math.fsum(r.fuel_g for r in self.edges)


@dataclass(frozen=True)
class Route:
    geometry: tuple
    legs: tuple
    waypoints: tuple  # snapped node index of source, each via point, destination
    leg_starts: tuple  # geometry index where each leg begins
    fuel_density: float
    metric: Metric = Metric.FUEL
    node_path: tuple = field(default=())

    @property
    def edges(self):
        return tuple(r for leg in self.legs for r in leg.edges)

    @property
    def total_distance(self):
        return math.fsum(r.length_m for r in self.edges)

    @property
    def total_duration(self):
        return math.fsum(r.duration_s for r in self.edges)

    @property
    def total_fuel_g(self):
        return math.fsum(r.fuel_g for r in self.edges)

    @property
    def total_fuel(self):
        """Litres."""
        return self.total_fuel_g / self.fuel_density

    def cost(self, metric) -> float:
        metric = Metric(metric)
        if metric is Metric.DISTANCE:
            return self.total_distance
        if metric is Metric.DURATION:
            return self.total_duration
        return self.total_fuel_g


def route(graph: RoadGraph, query: RouteQuery, fuel_model: FuelModel,
          velocity_profile: VelocityProfile | None = None, k: float = DEFAULT_PENALTY_K,
          costs: EdgeCosts | None = None) -> Route:
    """Snap the query points and join the optimal legs between consecutive ones.

    The metric picks the path; distance, duration and fuel are reported for
    that path whatever the metric. ``costs`` may be passed to reuse
    precomputed edge costs for the same vehicle and speed table.
    """
    if graph.num_nodes == 0:
        raise EmptyGraphError("cannot route on an empty graph")
    if costs is None:
        velocity_profile = velocity_profile or VelocityProfile()
        table = velocity_profile.table(query.city_profile, query.depart_hour)
        costs = edge_costs(graph, query.vehicle, table, fuel_model, k)
    weights = costs.weights(query.metric)

    points = (query.source, *query.via, query.destination)
    snapped = tuple(graph.snap(p) for p in points)
    legs = []
    nodes = [snapped[0]]
    leg_starts = []
    for i, (a, b) in enumerate(zip(snapped, snapped[1:])):
        found = shortest_path(graph, a, b, weights)
        if found is None:
            raise RouteError(f"leg {i} ({points[i]} -> {points[i + 1]}) is unreachable", leg=i)
        leg_starts.append(len(nodes) - 1)
        records = tuple(
            EdgeRecord(
                edge=e,
                source=int(graph.edge_source[e]),
                target=int(graph.edge_target[e]),
                length_m=float(costs.length[e]),
                speed_kmh=float(costs.speed[e]),
                gradient=float(graph.edge_gradient[e]),
                duration_s=float(costs.duration[e]),
                fuel_g=float(costs.fuel_g[e]),
                way_id=int(graph.edge_way[e]),
            )
            for e in found.edges
        )
        legs.append(Leg(a, b, records))
        nodes.extend(found.nodes[1:])
    geometry = tuple(graph.position(n) for n in nodes)
    return Route(
        geometry=geometry,
        legs=tuple(legs),
        waypoints=snapped,
        leg_starts=tuple(leg_starts),
        fuel_density=fuel_model.fuel_density,
        metric=query.metric,
        node_path=tuple(nodes),
    )
