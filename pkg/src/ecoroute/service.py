"""HTTP JSON API over a shared :class:`~ecoroute.config.Engine`.

Endpoints::

    GET /route?src=LAT,LON&dst=LAT,LON[&via=LAT,LON...][&vehicle=][&metric=][&hour=][&city=]
    GET /health
"""
from __future__ import annotations

import json
import logging
import threading
from http import HTTPStatus
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlsplit

from .config import Engine, EngineConfig
from .errors import ConfigError, EcoRouteError, RouteError
from .fuel import VehicleType
from .geo import GeoPoint
from .polyline import encode_polyline
from .router import Metric

log = logging.getLogger(__name__)


def route_response(engine: Engine, r) -> dict:
    steps = engine.itinerary(r)
    return {
        "status": "ok",
        "distance_m": r.total_distance,
        "duration_s": r.total_duration,
        "fuel_l": r.total_fuel,
        "geometry": encode_polyline(r.geometry),
        "steps": [
            {"turn": s.turn.value, "name": s.road_name, "distance_m": s.distance,
             "instruction": s.instruction()}
            for s in steps
        ],
        "legs": [
            {"distance_m": leg.distance_m, "duration_s": leg.duration_s,
             "fuel_l": leg.fuel_g / r.fuel_density}
            for leg in r.legs
        ],
    }


def route_geojson(engine: Engine, r) -> dict:
    coords = [[p.lon, p.lat] for p in r.geometry]
    if len(coords) == 1:
        coords.append(list(coords[0]))  # a LineString needs two positions
    return {
        "type": "Feature",
        "geometry": {"type": "LineString", "coordinates": coords},
        "properties": {
            "distance_m": r.total_distance,
            "duration_s": r.total_duration,
            "fuel_l": r.total_fuel,
            "metric": r.metric.value,
        },
    }


def dumps(obj) -> bytes:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":")).encode("utf-8")


class BadRequest(ValueError):
    pass


def parse_route_params(query: str) -> dict:
    params = parse_qs(query, keep_blank_values=True)

    def one(name, required=False):
        values = params.get(name)
        if not values:
            if required:
                raise BadRequest(f"missing parameter {name!r}")
            return None
        if len(values) > 1:
            raise BadRequest(f"parameter {name!r} given more than once")
        return values[0]

    try:
        out = {
            "source": GeoPoint.parse(one("src", True)),
            "destination": GeoPoint.parse(one("dst", True)),
            "via": tuple(GeoPoint.parse(v) for v in params.get("via", [])),
        }
        vehicle = one("vehicle")
        metric = one("metric")
        hour = one("hour")
        out["vehicle"] = VehicleType(vehicle) if vehicle else None
        out["metric"] = Metric(metric) if metric else None
        out["hour"] = int(hour) if hour else None
        out["city"] = one("city") or None
    except ValueError as exc:
        raise BadRequest(str(exc)) from None
    return out


class EngineHolder:
    """Holds the engine once loading finishes; requests before that get 503."""

    def __init__(self, engine: Engine | None = None):
        self._engine = engine
        self._ready = threading.Event()
        self.error = None
        if engine is not None:
            self._ready.set()

    @property
    def engine(self):
        return self._engine if self._ready.is_set() else None

    def set(self, engine):
        self._engine = engine
        self._ready.set()

    def load_in_background(self, config: EngineConfig):
        def work():
            try:
                self.set(Engine.load(config))
            except Exception as exc:  # surfaced via /health
                log.exception("engine load failed")
                self.error = str(exc)

        t = threading.Thread(target=work, name="engine-load", daemon=True)
        t.start()
        return t


def handle(holder: EngineHolder, path: str):
    """Dispatch one GET request; returns ``(status, body_dict)``."""
    url = urlsplit(path)
    engine = holder.engine
    if url.path == "/health":
        if engine is None:
            body = {"status": "loading" if holder.error is None else "error"}
            if holder.error:
                body["message"] = holder.error
            return HTTPStatus.SERVICE_UNAVAILABLE, body
        return HTTPStatus.OK, {
            "status": "ok",
            "graph_nodes": engine.graph.num_nodes,
            "dem_tiles": len(engine.dem),
        }
    if url.path == "/route":
        if engine is None:
            return HTTPStatus.SERVICE_UNAVAILABLE, {"status": "error", "message": "engine not ready"}
        try:
            params = parse_route_params(url.query)
            q = engine.query(**params)
        except (BadRequest, ValueError) as exc:
            return HTTPStatus.BAD_REQUEST, {"status": "error", "message": str(exc)}
        try:
            r = engine.route(q)
        except RouteError as exc:
            return HTTPStatus.NOT_FOUND, {"status": "error", "message": str(exc), "leg": exc.leg}
        except ConfigError as exc:
            return HTTPStatus.BAD_REQUEST, {"status": "error", "message": str(exc)}
        except EcoRouteError as exc:
            return HTTPStatus.INTERNAL_SERVER_ERROR, {"status": "error", "message": str(exc)}
        return HTTPStatus.OK, route_response(engine, r)
    return HTTPStatus.NOT_FOUND, {"status": "error", "message": f"no such endpoint {url.path}"}


class _Server(ThreadingHTTPServer):
    daemon_threads = True
    request_queue_size = 128  # the socketserver default of 5 drops bursts of connects


def make_server(holder: EngineHolder, host="127.0.0.1", port=8080) -> ThreadingHTTPServer:
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def do_GET(self):
            status, body = handle(holder, self.path)
            payload = dumps(body)
            self.send_response(status)
            self.send_header("Content-Type", "application/json; charset=utf-8")
            self.send_header("Content-Length", str(len(payload)))
            self.end_headers()
            self.wfile.write(payload)

        def log_message(self, fmt, *args):
            log.debug("%s - %s", self.address_string(), fmt % args)

    return _Server((host, port), Handler)


def serve(config: EngineConfig):
    """Validate config, bind, then load the graph while answering /health with 503."""
    config.validate()
    host, port = config.host_port
    holder = EngineHolder()
    server = make_server(holder, host, port)
    holder.load_in_background(config)
    log.info("listening on http://%s:%d", *server.server_address[:2])
    try:
        server.serve_forever()
    finally:
        server.server_close()
