"""Eco-routing: least-fuel routes on OpenStreetMap roads with DEM-derived gradients."""
from .dem import (
    DemStore,
    DemTile,
    elevation_bilinear,
    elevation_nearest,
    gradient_percent,
    normalize_profile,
    parse_asc,
)
from .errors import EcoRouteError
from .fuel import FuelModel, GradientClass, VehicleType, fcz, fuel_rate, grams_to_liters, rgf
from .geo import GeoPoint, bearing, haversine
from .graph import RoadGraph, build_graph, snap
from .itinerary import Step, TurnType, build_itinerary, classify_turn
from .kernels import BACKEND_NAME
from .osm import OsmNode, OsmWay, RoadClass, parse_osm
from .polyline import decode_polyline, encode_number, encode_polyline
from .router import Metric, Route, RouteQuery, edge_weight, gradient_velocity_penalty, route, shortest_path
from .traffic import BASE_SPEEDS, TrafficProfile, VelocityProfile, effective_table, slowdown_ratio

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME", "BASE_SPEEDS", "DemStore", "DemTile", "EcoRouteError", "FuelModel",
    "GeoPoint", "GradientClass", "Metric", "OsmNode", "OsmWay", "RoadClass", "RoadGraph",
    "Route", "RouteQuery", "Step", "TrafficProfile", "TurnType", "VehicleType",
    "VelocityProfile", "bearing", "build_graph", "build_itinerary", "classify_turn",
    "decode_polyline", "edge_weight", "effective_table", "elevation_bilinear",
    "elevation_nearest", "encode_number", "encode_polyline", "fcz", "fuel_rate",
    "gradient_percent", "gradient_velocity_penalty", "grams_to_liters", "haversine",
    "normalize_profile", "parse_asc", "parse_osm", "rgf", "route", "shortest_path",
    "slowdown_ratio", "snap",
]
