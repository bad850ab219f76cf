"""OSM XML (v0.6) reader for routable highway ways."""
from __future__ import annotations

import io
import logging
import os
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from enum import Enum
from xml.sax.saxutils import quoteattr

from .errors import OsmLinkError, OsmParseError
from .geo import GeoPoint

log = logging.getLogger(__name__)


class RoadClass(str, Enum):
    MOTORWAY = "motorway"
    MOTORWAY_LINK = "motorway_link"
    TRUNK = "trunk"
    TRUNK_LINK = "trunk_link"
    PRIMARY = "primary"
    PRIMARY_LINK = "primary_link"
    SECONDARY = "secondary"
    SECONDARY_LINK = "secondary_link"
    TERTIARY = "tertiary"
    TERTIARY_LINK = "tertiary_link"
    UNCLASSIFIED = "unclassified"
    RESIDENTIAL = "residential"
    LIVING_STREET = "living_street"
    SERVICE = "service"

    @classmethod
    def from_tag(cls, value):
        """Return the class for a ``highway`` tag value, or None if not routable."""
        try:
            return cls(value)
        except ValueError:
            return None


ROAD_CLASSES = tuple(RoadClass)
ONEWAY_TRUE = frozenset({"yes", "true", "1"})


@dataclass(frozen=True, slots=True)
class OsmNode:
    id: int
    position: GeoPoint


@dataclass(frozen=True, slots=True)
class OsmWay:
    id: int
    node_refs: tuple[int, ...]
    road_class: RoadClass
    oneway: bool = False
    name: str | None = None


@dataclass
class OsmExtract:
    nodes: list[OsmNode] = field(default_factory=list)
    ways: list[OsmWay] = field(default_factory=list)

    def __iter__(self):
        return iter((self.nodes, self.ways))


def _open(source):
    if isinstance(source, (bytes, bytearray)):
        return io.BytesIO(source)
    if isinstance(source, str) and source.lstrip().startswith("<"):
        return io.BytesIO(source.encode("utf-8"))
    if isinstance(source, (str, os.PathLike)):
        return open(source, "rb")
    return source


def parse_osm(source, strict=True):
    """Parse an OSM XML extract into nodes and routable ways.

    ``source`` may be bytes, XML text, a path, or a binary file object.
    Ways whose ``highway`` tag is not one of the fourteen road classes are
    dropped. With ``strict=True`` a way that references a node absent from
    the extract raises :class:`OsmLinkError`; otherwise the way is split at
    the missing nodes and the dangling segments are dropped (with a logged
    count), which is what clipped extracts need.
    """
    nodes = []
    ways = []
    fh = _open(source)
    try:
        for _, elem in ET.iterparse(fh, events=("end",)):
            if elem.tag == "node":
                try:
                    pos = GeoPoint(float(elem.attrib["lat"]), float(elem.attrib["lon"]))
                    nodes.append(OsmNode(int(elem.attrib["id"]), pos))
                except (KeyError, ValueError) as exc:
                    raise OsmParseError(f"bad node {elem.attrib.get('id')!r}: {exc}") from exc
                elem.clear()
            elif elem.tag == "way":
                way = _way_from_element(elem)
                if way is not None:
                    ways.append(way)
                elem.clear()
    except ET.ParseError as exc:
        raise OsmParseError(str(exc), line=exc.position[0]) from exc
    finally:
        if fh is not source:
            fh.close()

    return OsmExtract(nodes, link_ways(nodes, ways, strict=strict))


def _way_from_element(elem):
    tags = {t.attrib.get("k"): t.attrib.get("v", "") for t in elem.iter("tag")}
    road_class = RoadClass.from_tag(tags.get("highway"))
    if road_class is None:
        return None
    try:
        way_id = int(elem.attrib["id"])
        refs = tuple(int(nd.attrib["ref"]) for nd in elem.iter("nd"))
    except (KeyError, ValueError) as exc:
        raise OsmParseError(f"bad way {elem.attrib.get('id')!r}: {exc}") from exc
    if len(refs) < 2:
        log.debug("way %s has fewer than 2 nodes, dropped", way_id)
        return None
    oneway = tags.get("oneway", "").strip().lower() in ONEWAY_TRUE
    return OsmWay(way_id, refs, road_class, oneway, tags.get("name") or None)


def link_ways(nodes, ways, strict=True):
    """Check every way's node refs resolve; split or reject the ones that don't."""
    known = {n.id for n in nodes}
    linked = []
    dropped = 0
    for way in ways:
        missing = [r for r in way.node_refs if r not in known]
        if not missing:
            linked.append(way)
            continue
        if strict:
            raise OsmLinkError(way.id, missing)
        run = []
        pieces = []
        for ref in way.node_refs:
            if ref in known:
                run.append(ref)
            else:
                if len(run) >= 2:
                    pieces.append(run)
                run = []
        if len(run) >= 2:
            pieces.append(run)
        dropped += len(way.node_refs) - 1 - sum(len(p) - 1 for p in pieces)
        linked.extend(
            OsmWay(way.id, tuple(p), way.road_class, way.oneway, way.name) for p in pieces
        )
    if dropped:
        log.info("dropped %d dangling way segment(s) referencing absent nodes", dropped)
    return linked


def serialize_osm(nodes, ways) -> bytes:
    """Write nodes and ways back out as OSM XML understood by :func:`parse_osm`."""
    out = ['<?xml version="1.0" encoding="UTF-8"?>', '<osm version="0.6" generator="ecoroute">']
    for n in nodes:
        out.append(f'  <node id="{n.id}" lat="{n.position.lat!r}" lon="{n.position.lon!r}"/>')
    for w in ways:
        out.append(f'  <way id="{w.id}">')
        out.extend(f'    <nd ref="{r}"/>' for r in w.node_refs)
        out.append(f'    <tag k="highway" v="{w.road_class.value}"/>')
        if w.oneway:
            out.append('    <tag k="oneway" v="yes"/>')
        if w.name is not None:
            out.append(f'    <tag k="name" v={quoteattr(w.name)}/>')
        out.append("  </way>")
    out.append("</osm>")
    return ("\n".join(out) + "\n").encode("utf-8")
