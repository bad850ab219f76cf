import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from ecoroute.errors import PolylineDecodeError
from ecoroute.geo import GeoPoint
from ecoroute.polyline import decode_number, decode_polyline, encode_number, encode_polyline

import polyline_reference as ref


def test_reference_decoder_on_known_vectors():
    # widely published sample: three points, the first of which is (38.5, -120.2)
    assert ref.decode("_p~iF~ps|U_ulLnnqC_mqNvxq`@") == [(38.5, -120.2), (40.7, -120.95), (43.252, -126.453)]
    assert ref.encode([(38.5, -120.2)]) == "_p~iF~ps|U"


def test_zero():
    assert encode_number(0) == "?"
    assert encode_polyline([GeoPoint(0, 0)]) == "??"
    assert decode_polyline("??") == [GeoPoint(0.0, 0.0)]


def test_known_numbers():
    # -120.2 degrees is the longitude chunk of the single-point example
    assert encode_number(-12020000) == "~ps|U"
    assert decode_number("~ps|U") == -12020000
    # -179.98321 degrees is the classic worked example of the number encoding
    assert encode_number(-17998321) == "`~oia@"
    assert ref.decode_values("`~oia@") == [-17998321]
    assert decode_number("`~oia@") == -17998321


def test_single_point():
    assert encode_polyline([GeoPoint(38.5, -120.2)]) == "_p~iF~ps|U"
    assert decode_polyline("_p~iF~ps|U") == [GeoPoint(38.5, -120.2)]


def test_three_points_match_reference():
    pts = [(38.5, -120.2), (40.7, -120.95), (43.252, -126.453)]
    text = encode_polyline([GeoPoint(*p) for p in pts])
    assert text == ref.encode(pts) == "_p~iF~ps|U_ulLnnqC_mqNvxq`@"


@settings(max_examples=500, deadline=None)
@given(st.integers(-(2**30) + 1, 2**30 - 1))
def test_number_roundtrip_and_reference(a):
    chunk = encode_number(a)
    assert chunk == ref.encode_value(a)
    assert decode_number(chunk) == a
    assert all(ord(c) >= 95 for c in chunk[:-1])
    assert ord(chunk[-1]) < 95


def test_number_overflow():
    with pytest.raises(ValueError):
        encode_number(2**30)
    with pytest.raises(ValueError):
        encode_number(-(2**30))


def test_rejects_out_of_range_character():
    with pytest.raises(PolylineDecodeError) as info:
        decode_polyline("a" + chr(200))
    assert info.value.offset == 1
    with pytest.raises(PolylineDecodeError) as info:
        decode_polyline("??>")
    assert info.value.offset == 2


def test_rejects_truncated_chunk():
    with pytest.raises(PolylineDecodeError):
        decode_polyline("_p~iF~ps|")
    with pytest.raises(PolylineDecodeError):
        decode_polyline("_p~iF")  # latitude only


def test_empty():
    with pytest.raises(ValueError):
        encode_polyline([])
    assert decode_polyline("") == []


@pytest.mark.parametrize("x,expected", [
    (0.000005, 1), (-0.000005, -1), (0.0000149, 1), (2.5e-05, 3), (-2.5e-05, -3),
    (12.345675, 1234568), (-12.345675, -1234568), (1.25e-05, 1),
])
def test_rounding_half_away_from_zero(x, expected):
    assert ref.to_int(x) == expected
    assert decode_polyline(encode_polyline([GeoPoint(x, 0)]))[0].lat == expected / 1e5


def random_track(rng, n):
    lat, lon = rng.uniform(-60, 60), rng.uniform(-170, 170)
    pts = []
    for _ in range(n):
        lat = min(89.0, max(-89.0, lat + rng.gauss(0, 0.0003)))
        lon = min(179.0, max(-179.0, lon + rng.gauss(0, 0.0003)))
        pts.append((lat, lon))
    return pts


def test_roundtrip_agrees_with_reference():
    rng = random.Random(2)
    for _ in range(200):
        pts = random_track(rng, rng.randint(1, 300))
        text = encode_polyline([GeoPoint(*p) for p in pts])
        assert text == ref.encode(pts)
        back = decode_polyline(text)
        assert [(p.lat, p.lon) for p in back] == ref.decode(text)
        for (lat, lon), p in zip(pts, back):
            assert abs(p.lat - lat) <= 0.5e-5 + 1e-12
            assert abs(p.lon - lon) <= 0.5e-5 + 1e-12


def test_alphabet():
    rng = random.Random(6)
    for _ in range(50):
        text = encode_polyline([GeoPoint(*p) for p in random_track(rng, 100)])
        assert all(63 <= ord(c) <= 126 for c in text)


def test_compression_against_json():
    rng = random.Random(12)
    pts = random_track(rng, 1000)
    as_json = json.dumps([[float(f"{a:.6f}"), float(f"{b:.6f}")] for a, b in pts])
    text = encode_polyline([GeoPoint(*p) for p in pts])
    assert len(text.encode()) <= 0.25 * len(as_json.encode())
