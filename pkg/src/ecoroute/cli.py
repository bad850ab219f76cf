"""Command-line interface: ``ecoroute <command> ...``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import Engine, find_config, load_config
from .dem import DemStore, elevation_bilinear, elevation_nearest
from .errors import EcoRouteError
from .fuel import VehicleType, builtin_fuel_model, load_fuel_model
from .geo import GeoPoint
from .geocoder import geocode
from .graph import build_graph
from .osm import parse_osm
from .polyline import decode_polyline, encode_polyline
from .router import Metric


def _point(text):
    try:
        return GeoPoint.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _resolve(engine, point, address, label):
    if address is None:
        if point is None:
            raise EcoRouteError(f"give --{label} or --{label}-address")
        return point
    if engine.gazetteer is None:
        raise EcoRouteError("no gazetteer configured for address lookup")
    hit = geocode(engine.gazetteer, address)
    if hit is None:
        raise EcoRouteError(f"address not found: {address!r}")
    return hit.position


def cmd_route(args, out):
    from .service import dumps, route_geojson, route_response

    engine = Engine.load(load_config(find_config(args.config)))
    src = _resolve(engine, args.src, args.src_address, "src")
    dst = _resolve(engine, args.dst, args.dst_address, "dst")
    q = engine.query(src, dst, args.via, vehicle=args.vehicle, metric=args.metric,
                     hour=args.hour, city=args.city)
    r = engine.route(q)
    if args.format == "json":
        out.write(dumps(route_response(engine, r)).decode("utf-8") + "\n")
    elif args.format == "geojson":
        out.write(json.dumps(route_geojson(engine, r), indent=2) + "\n")
    else:
        for i, step in enumerate(engine.itinerary(r), 1):
            out.write(f"{i:3d}. {step.instruction()}\n")
        out.write(
            f"Total: {r.total_distance / 1000:.2f} km, {r.total_duration / 60:.1f} min, "
            f"{r.total_fuel:.3f} L\n"
        )
    return 0


def cmd_dem_lookup(args, out):
    if args.dem_dir:
        store = DemStore.from_directory(args.dem_dir)
    else:
        cfg = load_config(find_config(args.config))
        if cfg.dem_dir is None:
            raise EcoRouteError("config has no dem_dir; pass --dem-dir")
        store = DemStore.from_directory(cfg.dem_dir)
    p = GeoPoint(args.lat, args.lon)
    h = elevation_bilinear(store, p) if args.method == "bilinear" else elevation_nearest(store, p)
    if h is None:
        out.write("unknown\n")
        return 1
    out.write(f"{h:g}\n")
    return 0


def cmd_fuel_rate(args, out):
    if args.coefficients in ("identity", "sample"):
        model = builtin_fuel_model(args.coefficients)
    else:
        model = load_fuel_model(args.coefficients)
    g_per_km = model.fuel_rate(args.vehicle, args.speed, args.gradient)
    l_per_100km = 100.0 * g_per_km / model.fuel_density
    out.write(f"{g_per_km:.3f} g/km\n{l_per_100km:.3f} L/100km\n")
    return 0


def cmd_polyline(args, out, inp):
    if args.action == "encode":
        points = []
        for line in inp:
            line = line.strip()
            if line:
                points.append(GeoPoint.parse(line))
        out.write(encode_polyline(points) + "\n")
    else:
        for p in decode_polyline(inp.read().strip()):
            out.write(f"{p.lat:.5f},{p.lon:.5f}\n")
    return 0


def cmd_ingest(args, out):
    nodes, ways = parse_osm(args.osm, strict=args.strict)
    store = DemStore.from_directory(args.dem_dir) if args.dem_dir else None
    graph = build_graph(nodes, ways, elevation=store.bilinear if store else None)
    summary = {
        "osm_nodes": len(nodes),
        "routable_ways": len(ways),
        "graph_nodes": graph.num_nodes,
        "graph_edges": graph.num_edges,
    }
    text = json.dumps(summary, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    out.write(text)
    return 0


def cmd_serve(args, out):
    from .service import serve

    cfg = load_config(find_config(args.config))
    serve(cfg)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="ecoroute", description="Least-fuel routing on OSM road networks.")
    p.add_argument("--config", help="engine config (TOML); defaults to $ECOROUTE_CONFIG")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("route", help="compute a route")
    r.add_argument("--src", type=_point)
    r.add_argument("--dst", type=_point)
    r.add_argument("--src-address")
    r.add_argument("--dst-address")
    r.add_argument("--via", type=_point, action="append", default=[])
    r.add_argument("--vehicle", choices=[v.value for v in VehicleType])
    r.add_argument("--metric", choices=[m.value for m in Metric])
    r.add_argument("--hour", type=int)
    r.add_argument("--city")
    r.add_argument("--format", choices=("json", "geojson", "text"), default="json")
    r.set_defaults(func=cmd_route)

    dem = sub.add_parser("dem", help="elevation queries")
    dem_sub = dem.add_subparsers(dest="dem_command", required=True)
    look = dem_sub.add_parser("lookup")
    look.add_argument("--lat", type=float, required=True)
    look.add_argument("--lon", type=float, required=True)
    look.add_argument("--method", choices=("nearest", "bilinear"), default="bilinear")
    look.add_argument("--dem-dir")
    look.set_defaults(func=cmd_dem_lookup)

    fuel = sub.add_parser("fuel", help="fuel consumption rates")
    fuel_sub = fuel.add_subparsers(dest="fuel_command", required=True)
    rate = fuel_sub.add_parser("rate")
    rate.add_argument("--vehicle", choices=[v.value for v in VehicleType], required=True)
    rate.add_argument("--speed", type=float, required=True, help="km/h")
    rate.add_argument("--gradient", type=float, default=0.0, help="percent")
    rate.add_argument("--coefficients", default="sample",
                      help="'identity', 'sample' (packaged, illustrative) or a TOML path")
    rate.set_defaults(func=cmd_fuel_rate)

    poly = sub.add_parser("polyline", help="encode/decode polylines on stdin")
    poly.add_argument("action", choices=("encode", "decode"))
    poly.set_defaults(func=lambda a, o: cmd_polyline(a, o, sys.stdin))

    ing = sub.add_parser("ingest", help="parse an OSM extract and report graph size")
    ing.add_argument("--osm", required=True)
    ing.add_argument("--dem-dir")
    ing.add_argument("--out", help="write the JSON summary here")
    ing.add_argument("--strict", action="store_true", help="reject ways with absent nodes")
    ing.set_defaults(func=cmd_ingest)

    srv = sub.add_parser("serve", help="run the HTTP API")
    srv.set_defaults(func=cmd_serve)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except (EcoRouteError, ValueError, OSError) as exc:
        print(f"ecoroute: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
