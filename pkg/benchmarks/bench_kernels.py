"""Compare the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--grid 150] [--repeat 3]

Builds a square street grid, then times point-to-point Dijkstra searches
and polyline encode/decode with both backends.
"""
import argparse
import random
import timeit

import numpy as np

from ecoroute import kernels
from ecoroute.geo import GeoPoint
from ecoroute.graph import build_graph
from ecoroute.osm import OsmNode, OsmWay, RoadClass


def grid_graph(n, step=0.001):
    nodes = [OsmNode(i * n + j + 1, GeoPoint(12.9 + i * step, 77.5 + j * step))
             for i in range(n) for j in range(n)]
    ways = []
    for i in range(n):
        ways.append(OsmWay(10**7 + i, tuple(i * n + j + 1 for j in range(n)), RoadClass.RESIDENTIAL))
        ways.append(OsmWay(2 * 10**7 + i, tuple(j * n + i + 1 for j in range(n)), RoadClass.SECONDARY))
    return build_graph(nodes, ways)


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", type=int, default=150, help="grid side length (nodes)")
    ap.add_argument("--queries", type=int, default=20)
    ap.add_argument("--points", type=int, default=20_000, help="polyline length")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    g = grid_graph(args.grid)
    rng = np.random.default_rng(0)
    w = g.edge_length * rng.uniform(1.0, 1.5, g.num_edges)
    pairs = [tuple(rng.integers(0, g.num_nodes, 2)) for _ in range(args.queries)]
    r = random.Random(1)
    values = [r.randint(-5000, 5000) for _ in range(2 * args.points)]

    backends = {"python": kernels.pure}
    if kernels.compiled is not None:
        backends["compiled"] = kernels.compiled
    else:
        print("compiled extension not built; timing the Python fallback only")

    print(f"graph: {g.num_nodes} nodes, {g.num_edges} edges; {args.queries} queries; "
          f"polyline of {args.points} points")
    results = {}
    for name, mod in backends.items():
        def search():
            for s, d in pairs:
                mod.dijkstra(g.indptr, g.edge_source, g.edge_target, w, int(s), int(d))
        text = mod.encode_ints(values)
        results[name] = (
            best_of(search, args.repeat) / args.queries,
            best_of(lambda: mod.encode_ints(values), args.repeat),
            best_of(lambda: mod.decode_ints(text), args.repeat),
        )

    print(f"{'backend':<10}{'dijkstra/query':>16}{'encode':>12}{'decode':>12}")
    for name, (d, e, de) in results.items():
        print(f"{name:<10}{d * 1e3:>13.2f} ms{e * 1e3:>9.2f} ms{de * 1e3:>9.2f} ms")
    if "compiled" in results:
        py, c = results["python"], results["compiled"]
        print(f"{'speedup':<10}{py[0] / c[0]:>15.1f}x{py[1] / c[1]:>11.1f}x{py[2] / c[2]:>11.1f}x")


if __name__ == "__main__":
    main()
