"""Immutable directed road graph built from OSM ways and a DEM."""
from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass, replace
from typing import Callable, NamedTuple, Optional

import numpy as np

from .errors import EmptyGraphError
from .geo import EARTH_RADIUS_M, GeoPoint, haversine_m
from .osm import ROAD_CLASSES, OsmNode, OsmWay, RoadClass

log = logging.getLogger(__name__)

MAX_GRADIENT = 30.0
SNAP_CELL_DEG = 0.01

ElevationFn = Callable[[GeoPoint], Optional[float]]


class Edge(NamedTuple):
    index: int
    source: int
    target: int
    length: float
    road_class: RoadClass
    gradient: float
    way_id: int


def _frozen(a, dtype):
    a = np.ascontiguousarray(a, dtype=dtype)
    a.setflags(write=False)
    return a


class SpatialGrid:
    """Uniform lat/lon bucket grid used to find the nearest graph node."""

    def __init__(self, lat, lon, cell_deg=SNAP_CELL_DEG):
        self.lat = lat
        self.lon = lon
        self.cell = cell_deg
        self.max_abs_lat = float(np.max(np.abs(lat))) if len(lat) else 0.0
        buckets = defaultdict(list)
        rows = np.floor(lat / cell_deg).astype(np.int64)
        cols = np.floor(lon / cell_deg).astype(np.int64)
        for i, key in enumerate(zip(rows.tolist(), cols.tolist())):
            buckets[key].append(i)
        self.buckets = {k: np.array(v, dtype=np.int64) for k, v in buckets.items()}
        self.row_range = (int(rows.min()), int(rows.max())) if len(lat) else (0, -1)
        self.col_range = (int(cols.min()), int(cols.max())) if len(lat) else (0, -1)

    def _lower_bound(self, k, max_abs_lat):
        # distance to anything outside the (2k+1)^2 block around the query cell
        delta = math.radians(k * self.cell)
        by_lat = EARTH_RADIUS_M * delta
        h = math.cos(math.radians(max_abs_lat)) * math.sin(min(delta, math.pi) / 2)
        by_lon = 2 * EARTH_RADIUS_M * math.asin(min(1.0, h))
        return min(by_lat, by_lon)

    def nearest(self, p: GeoPoint) -> int:
        if not len(self.lat):
            raise EmptyGraphError("cannot snap on an empty graph")
        r0 = math.floor(p.lat / self.cell)
        c0 = math.floor(p.lon / self.cell)
        max_abs_lat = max(self.max_abs_lat, abs(p.lat))
        reach = max(
            abs(r0 - self.row_range[0]), abs(r0 - self.row_range[1]),
            abs(c0 - self.col_range[0]), abs(c0 - self.col_range[1]),
        )
        best_d = math.inf
        best_i = -1
        k = 0
        while True:
            if (2 * k + 1) ** 2 > len(self.buckets) + 64:
                # the rings now cost more than scanning every node
                d = haversine_m(p.lat, p.lon, self.lat, self.lon)
                return int(np.flatnonzero(d == d.min())[0])
            cand = []
            for r in range(r0 - k, r0 + k + 1):
                if k and r0 - k < r < r0 + k:
                    cols = (c0 - k, c0 + k)
                else:
                    cols = range(c0 - k, c0 + k + 1)
                for c in cols:
                    b = self.buckets.get((r, c))
                    if b is not None:
                        cand.append(b)
            if cand:
                idx = np.concatenate(cand)
                d = haversine_m(p.lat, p.lon, self.lat[idx], self.lon[idx])
                dmin = d.min()
                i = int(idx[d == dmin].min())
                if dmin < best_d or (dmin == best_d and i < best_i):
                    best_d, best_i = float(dmin), i
            if k >= reach:
                return best_i
            if best_i >= 0 and best_d < self._lower_bound(k, max_abs_lat):
                return best_i
            k += 1


@dataclass(frozen=True, eq=False)
class RoadGraph:
    """Compressed-sparse-row road graph.

    Edges leaving node ``u`` occupy ``indptr[u]:indptr[u + 1]`` in the
    per-edge arrays. All arrays are read-only, so one instance can be
    shared by concurrent searches.
    """

    lat: np.ndarray
    lon: np.ndarray
    node_ids: np.ndarray
    indptr: np.ndarray
    edge_source: np.ndarray
    edge_target: np.ndarray
    edge_length: np.ndarray
    edge_class: np.ndarray
    edge_gradient: np.ndarray
    edge_way: np.ndarray
    way_names: dict
    index: SpatialGrid

    @property
    def num_nodes(self):
        return len(self.lat)

    @property
    def num_edges(self):
        return len(self.edge_target)

    def position(self, i) -> GeoPoint:
        return GeoPoint(float(self.lat[i]), float(self.lon[i]))

    def edge(self, e) -> Edge:
        return Edge(
            int(e),
            int(self.edge_source[e]),
            int(self.edge_target[e]),
            float(self.edge_length[e]),
            ROAD_CLASSES[self.edge_class[e]],
            float(self.edge_gradient[e]),
            int(self.edge_way[e]),
        )

    def out_edges(self, u):
        return [self.edge(e) for e in range(self.indptr[u], self.indptr[u + 1])]

    def edges(self):
        return [self.edge(e) for e in range(self.num_edges)]

    def snap(self, p: GeoPoint) -> int:
        return snap(self, p)

    def with_zero_gradient(self) -> RoadGraph:
        """The same network with every gradient set to 0."""
        return replace(self, edge_gradient=_frozen(np.zeros(self.num_edges), np.float64))


def build_graph(nodes: list[OsmNode], ways: list[OsmWay], elevation: ElevationFn | None = None) -> RoadGraph:
    """Build the directed road graph.

    Each consecutive node pair of a way becomes one edge, plus the reverse
    edge unless the way is one-way. Gradient is the percent grade between
    the endpoint elevations, clamped to +/-30 %, and 0 wherever
    ``elevation`` returns None for either endpoint.
    """
    if not ways:
        raise EmptyGraphError("no routable ways in extract")
    pos = {n.id: n.position for n in nodes}
    used = sorted({r for w in ways for r in w.node_refs})
    slot = {osm_id: i for i, osm_id in enumerate(used)}
    lat = np.array([pos[r].lat for r in used], dtype=np.float64)
    lon = np.array([pos[r].lon for r in used], dtype=np.float64)

    elev = np.full(len(used), np.nan)
    if elevation is not None:
        for i, r in enumerate(used):
            h = elevation(pos[r])
            if h is not None:
                elev[i] = h

    class_code = {rc: i for i, rc in enumerate(ROAD_CLASSES)}
    src, dst, way_of, cls, twoway = [], [], [], [], []
    for w in ways:
        idx = [slot[r] for r in w.node_refs]
        for a, b in zip(idx, idx[1:]):
            src.append(a)
            dst.append(b)
            way_of.append(w.id)
            cls.append(class_code[w.road_class])
            twoway.append(not w.oneway)
    src = np.array(src, dtype=np.int64)
    dst = np.array(dst, dtype=np.int64)
    length = haversine_m(lat[src], lon[src], lat[dst], lon[dst])
    keep = length > 0
    if not keep.all():
        log.info("dropped %d zero-length segment(s)", int((~keep).sum()))
    src, dst, length = src[keep], dst[keep], length[keep]
    way_of = np.array(way_of, dtype=np.int64)[keep]
    cls = np.array(cls, dtype=np.int8)[keep]
    twoway = np.array(twoway, dtype=bool)[keep]
    if not len(src):
        raise EmptyGraphError("no routable segments in extract")

    with np.errstate(invalid="ignore"):
        grade = 100.0 * (elev[dst] - elev[src]) / length
    grade = np.where(np.isfinite(grade), np.clip(grade, -MAX_GRADIENT, MAX_GRADIENT), 0.0)

    # forward edges first, then reverses; a stable sort by source keeps that order per node
    all_src = np.concatenate([src, dst[twoway]])
    all_dst = np.concatenate([dst, src[twoway]])
    all_len = np.concatenate([length, length[twoway]])
    all_grade = np.concatenate([grade, -grade[twoway]])
    all_way = np.concatenate([way_of, way_of[twoway]])
    all_cls = np.concatenate([cls, cls[twoway]])
    order = np.argsort(all_src, kind="stable")
    indptr = np.zeros(len(used) + 1, dtype=np.int64)
    np.cumsum(np.bincount(all_src, minlength=len(used)), out=indptr[1:])

    return RoadGraph(
        lat=_frozen(lat, np.float64),
        lon=_frozen(lon, np.float64),
        node_ids=_frozen(used, np.int64),
        indptr=_frozen(indptr, np.int64),
        edge_source=_frozen(all_src[order], np.int64),
        edge_target=_frozen(all_dst[order], np.int64),
        edge_length=_frozen(all_len[order], np.float64),
        edge_class=_frozen(all_cls[order], np.int8),
        edge_gradient=_frozen(all_grade[order], np.float64),
        edge_way=_frozen(all_way[order], np.int64),
        way_names={w.id: w.name for w in ways},
        index=SpatialGrid(lat, lon),
    )


def snap(graph: RoadGraph, p: GeoPoint) -> int:
    """Index of the node nearest to ``p`` (haversine); ties go to the lowest index."""
    return graph.index.nearest(p)
