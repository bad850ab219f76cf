"""Regenerate the bundled OSM/DEM fixtures.

    python tools/make_fixtures.py

Writes the demo city under ``src/ecoroute/data/demo`` and the steep/flat
pair under ``tests/data/steep_flat``. Both use lattice-aligned node
positions so the DEM elevations at nodes are exact sample values.
"""
import math
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def write_asc(path, xll, yll, cell, ncols, nrows, fn, nodata=-9999):
    rows = []
    for r in range(nrows):
        lat = yll + (nrows - 1 - r) * cell
        rows.append(" ".join(f"{fn(lat, xll + c * cell):.3f}" for c in range(ncols)))
    header = (
        f"ncols {ncols}\nnrows {nrows}\nxllcorner {xll}\nyllcorner {yll}\n"
        f"cellsize {cell}\nNODATA_value {nodata}\n"
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(header + "\n".join(rows) + "\n", encoding="ascii")


def write_osm(path, nodes, ways):
    out = ['<?xml version="1.0" encoding="UTF-8"?>', '<osm version="0.6" generator="make_fixtures">']
    for nid, (lat, lon) in sorted(nodes.items()):
        out.append(f'  <node id="{nid}" lat="{lat:.7f}" lon="{lon:.7f}"/>')
    for wid, refs, tags in ways:
        out.append(f'  <way id="{wid}">')
        out.extend(f'    <nd ref="{r}"/>' for r in refs)
        out.extend(f'    <tag k="{k}" v="{v}"/>' for k, v in tags.items())
        out.append("  </way>")
    # a footpath that must be ignored
    out.append('  <way id="999999"><nd ref="1"/><nd ref="2"/><tag k="highway" v="footway"/></way>')
    out.append("</osm>")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(out) + "\n", encoding="utf-8")


def steep_flat():
    cell = 0.0005
    lat0, lon0 = 13.0, 77.5
    crest_lon = lon0 + 9 * cell
    peak = 28.0

    def elev(lat, lon):
        along = max(0.0, 1.0 - abs(lon - crest_lon) / (9 * cell))
        across = min(1.0, max(0.0, 1.0 - (lat - lat0) / (2 * cell)))
        return 100.0 + peak * along * across

    base = ROOT / "tests" / "data" / "steep_flat"
    write_asc(base / "dem" / "tile.asc", lon0 - 2 * cell, lat0 - 2 * cell, cell, 24, 8, elev)
    nodes = {
        1: (lat0, lon0),                      # S
        2: (lat0, crest_lon),                 # crest
        3: (lat0, lon0 + 18 * cell),          # D
        4: (lat0 + 2 * cell, lon0),
        5: (lat0 + 2 * cell, lon0 + 18 * cell),
    }
    ways = [
        (10, [1, 2, 3], {"highway": "residential", "name": "Hill Road"}),
        (20, [1, 4, 5, 3], {"highway": "residential", "name": "Valley Road"}),
    ]
    write_osm(base / "city.osm", nodes, ways)
    (base / "ecoroute.toml").write_text(
        '[data]\nosm = "city.osm"\ndem_dir = "dem"\nfuel = "builtin:sample"\n\n'
        '[defaults]\nvehicle = "passenger_car"\nmetric = "fuel"\ngradient_penalty_k = 0.08\n',
        encoding="utf-8",
    )


def demo_city():
    cell = 0.0005
    lat0, lon0 = 12.97, 77.59
    step = 4 * cell  # ~220 m blocks
    n = 6

    def elev(lat, lon):
        # gentle westward tilt plus a hill in the north-east
        hill = 35.0 * math.exp(-(((lat - (lat0 + 4 * step)) / 0.003) ** 2 + ((lon - (lon0 + 4 * step)) / 0.003) ** 2))
        return 900.0 + 4000.0 * (lon - lon0) * 0.5 + hill

    base = ROOT / "src" / "ecoroute" / "data" / "demo"
    write_asc(base / "dem" / "demo.asc", lon0 - 4 * cell, lat0 - 4 * cell, cell,
              n * 4 + 4, n * 4 + 4, elev)
    nodes = {}
    for i in range(n):
        for j in range(n):
            nodes[100 + i * n + j] = (lat0 + i * step, lon0 + j * step)
    nodes[1] = (lat0 - 2 * cell, lon0 - 2 * cell)  # footway stub ends
    nodes[2] = (lat0 - 2 * cell, lon0 - 1 * cell)
    ordinals = ["1st", "2nd", "3rd", "4th", "5th", "6th"]
    ways = []
    for i in range(n):
        refs = [100 + i * n + j for j in range(n)]
        tags = {"highway": "residential", "name": f"{ordinals[i]} Cross"}
        if i == 0:
            tags = {"highway": "primary", "name": "Ring Road"}
        if i == 3:
            tags["oneway"] = "yes"
        ways.append((1000 + i, refs, tags))
    for j in range(n):
        refs = [100 + i * n + j for i in range(n)]
        tags = {"highway": "tertiary" if j in (0, n - 1) else "residential",
                "name": f"{chr(ord('A') + j)} Main"}
        ways.append((2000 + j, refs, tags))
    write_osm(base / "city.osm", nodes, ways)
    (base / "ecoroute.toml").write_text(
        '# Demo configuration: a 6x6 street grid with a hill, on the packaged sample\n'
        '# (illustrative) gradient coefficients.\n'
        '[data]\nosm = "city.osm"\ndem_dir = "dem"\nfuel = "builtin:sample"\n'
        'gazetteer = "gazetteer.csv"\n\n'
        '[defaults]\nvehicle = "passenger_car"\nmetric = "fuel"\ngradient_penalty_k = 0.08\n'
        'city = "bengaluru"\n\n[server]\nlisten = "127.0.0.1:8080"\n',
        encoding="utf-8",
    )
    (base / "gazetteer.csv").write_text(
        "# name,lat,lon\n"
        f"ring road west,{lat0:.4f},{lon0:.4f}\n"
        f"hilltop,{lat0 + 4 * step:.4f},{lon0 + 4 * step:.4f}\n"
        f"a main north,{lat0 + 5 * step:.4f},{lon0:.4f}\n",
        encoding="utf-8",
    )


if __name__ == "__main__":
    steep_flat()
    demo_city()
