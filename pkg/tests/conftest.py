import random
from pathlib import Path

import pytest

from ecoroute.config import Engine, load_config
from ecoroute.geo import GeoPoint
from ecoroute.graph import build_graph
from ecoroute.osm import OsmNode, OsmWay, RoadClass

HERE = Path(__file__).resolve().parent
STEEP_FLAT = HERE / "data" / "steep_flat" / "ecoroute.toml"
DEMO = HERE.parent / "src" / "ecoroute" / "data" / "demo" / "ecoroute.toml"


def make_graph(points, ways, elevation=None):
    """Graph from ``{id: (lat, lon)}`` and ``[(way_id, refs, class, oneway, name)]``."""
    nodes = [OsmNode(i, GeoPoint(*p)) for i, p in points.items()]
    osm_ways = [OsmWay(w, tuple(refs), RoadClass(c), one, name) for w, refs, c, one, name in ways]
    return build_graph(nodes, osm_ways, elevation)


def random_connected_graph(rng: random.Random, n_max=10):
    """Random connected road network with random classes, one-ways and elevations."""
    n = rng.randint(2, n_max)
    points = {i + 1: (12.9 + rng.uniform(0, 0.02), 77.5 + rng.uniform(0, 0.02)) for i in range(n)}
    classes = ["motorway", "primary", "secondary", "residential", "service"]
    ways = []
    wid = 1
    for i in range(2, n + 1):  # spanning tree, always two-way
        ways.append((wid, (rng.randint(1, i - 1), i), rng.choice(classes), False, None))
        wid += 1
    for _ in range(rng.randint(0, 2 * n)):
        a, b = rng.sample(range(1, n + 1), 2)
        ways.append((wid, (a, b), rng.choice(classes), rng.random() < 0.3, None))
        wid += 1
    heights = {points[i]: rng.uniform(0, 40) for i in points}
    return make_graph(points, ways, lambda p: heights[(p.lat, p.lon)])


@pytest.fixture(scope="session")
def steep_flat_engine():
    return Engine.load(load_config(STEEP_FLAT))


@pytest.fixture(scope="session")
def demo_engine():
    return Engine.load(load_config(DEMO))
