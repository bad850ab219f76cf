import io
import logging

import pytest

from ecoroute.errors import OsmLinkError, OsmParseError
from ecoroute.osm import RoadClass, link_ways, parse_osm, serialize_osm

from conftest import STEEP_FLAT, DEMO


def osm(body):
    return f'<?xml version="1.0"?><osm version="0.6">{body}</osm>'.encode()


TWO_NODES = '<node id="1" lat="10.0" lon="20.0"/><node id="2" lat="10.001" lon="20.0"/>'


def test_minimal_extract():
    nodes, ways = parse_osm(osm(TWO_NODES + '<way id="7"><nd ref="1"/><nd ref="2"/>'
                                '<tag k="highway" v="residential"/></way>'))
    assert len(nodes) == 2
    assert len(ways) == 1
    assert ways[0].road_class is RoadClass.RESIDENTIAL
    assert ways[0].node_refs == (1, 2)
    assert ways[0].oneway is False


def test_non_routable_way_dropped():
    _, ways = parse_osm(osm(TWO_NODES + '<way id="7"><nd ref="1"/><nd ref="2"/>'
                            '<tag k="highway" v="footway"/></way>'))
    assert ways == []


def test_untagged_way_dropped():
    _, ways = parse_osm(osm(TWO_NODES + '<way id="7"><nd ref="1"/><nd ref="2"/></way>'))
    assert ways == []


@pytest.mark.parametrize("value,expected", [
    ("yes", True), ("true", True), ("1", True), ("no", False), ("-1", False), ("reversible", False),
])
def test_oneway_values(value, expected):
    _, ways = parse_osm(osm(TWO_NODES + '<way id="7"><nd ref="1"/><nd ref="2"/>'
                            f'<tag k="highway" v="primary"/><tag k="oneway" v="{value}"/></way>'))
    assert ways[0].oneway is expected


def test_all_fourteen_classes_accepted():
    assert len(RoadClass) == 14
    body = TWO_NODES + "".join(
        f'<way id="{i}"><nd ref="1"/><nd ref="2"/><tag k="highway" v="{rc.value}"/></way>'
        for i, rc in enumerate(RoadClass, 1))
    _, ways = parse_osm(osm(body))
    assert [w.road_class for w in ways] == list(RoadClass)


def test_name_tag():
    _, ways = parse_osm(osm(TWO_NODES + '<way id="7"><nd ref="1"/><nd ref="2"/>'
                            '<tag k="highway" v="primary"/><tag k="name" v="MG Road"/></way>'))
    assert ways[0].name == "MG Road"


def test_missing_node_names_way():
    body = TWO_NODES + '<way id="42"><nd ref="1"/><nd ref="2"/><nd ref="3"/><tag k="highway" v="residential"/></way>'
    with pytest.raises(OsmLinkError) as info:
        parse_osm(osm(body))
    assert info.value.way_id == 42
    assert "42" in str(info.value)


def test_non_strict_drops_dangling_segments(caplog):
    body = (TWO_NODES + '<node id="4" lat="10.002" lon="20.0"/>'
            '<way id="42"><nd ref="1"/><nd ref="2"/><nd ref="3"/><nd ref="4"/>'
            '<tag k="highway" v="residential"/></way>')
    with caplog.at_level(logging.INFO):
        _, ways = parse_osm(osm(body), strict=False)
    assert [w.node_refs for w in ways] == [(1, 2)]
    assert any("dropped" in r.getMessage() for r in caplog.records)


def test_malformed_xml_reports_line():
    text = b'<?xml version="1.0"?>\n<osm>\n<node id="1" lat="1" lon="2">\n</osm>\n'
    with pytest.raises(OsmParseError) as info:
        parse_osm(text)
    assert info.value.line == 4


def test_accepts_file_objects_and_paths(tmp_path):
    data = osm(TWO_NODES)
    p = tmp_path / "x.osm"
    p.write_bytes(data)
    assert len(parse_osm(io.BytesIO(data)).nodes) == 2
    assert len(parse_osm(p).nodes) == 2
    assert len(parse_osm(str(p)).nodes) == 2


@pytest.mark.parametrize("path", [STEEP_FLAT.parent / "city.osm", DEMO.parent / "city.osm"])
def test_serialize_roundtrip(path):
    first = parse_osm(path)
    again = parse_osm(serialize_osm(first.nodes, first.ways))
    assert again.nodes == first.nodes
    assert again.ways == first.ways
    third = parse_osm(serialize_osm(again.nodes, again.ways))
    assert (len(third.nodes), len(third.ways)) == (len(first.nodes), len(first.ways))


def test_link_ways_strict_ok():
    nodes, ways = parse_osm(DEMO.parent / "city.osm")
    assert link_ways(nodes, ways) == ways
