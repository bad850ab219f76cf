import pytest

from ecoroute.errors import ConfigError
from ecoroute.osm import RoadClass
from ecoroute.traffic import (
    BASE_SPEEDS, TrafficProfile, VelocityProfile, effective_table, load_profiles,
    parse_profiles, scale_table, slowdown_ratio,
)

BASE = {
    "motorway": 90, "motorway_link": 45, "trunk": 85, "trunk_link": 40, "primary": 65,
    "primary_link": 30, "secondary": 55, "secondary_link": 25, "tertiary": 40,
    "tertiary_link": 20, "unclassified": 25, "residential": 25, "living_street": 10, "service": 15,
}
NINE_AM = {
    "motorway": 45, "motorway_link": 22.5, "trunk": 42.5, "trunk_link": 20, "primary": 32.5,
    "primary_link": 15, "secondary": 27.5, "secondary_link": 12.5, "tertiary": 20,
    "tertiary_link": 10, "unclassified": 12.5, "residential": 12.5, "living_street": 5, "service": 7.5,
}
MEANS = {  # hour -> ratio
    "bengaluru": {9: 0.846, 17: 0.934, 23: 0.240},
    "delhi": {9: 0.698, 17: 0.670, 23: 0.242},
    "hyderabad": {9: 0.566, 17: 0.745, 23: 0.272},
    "kolkata": {9: 0.588, 17: 0.627, 23: 0.252},
    "mumbai": {9: 0.736, 17: 0.832, 23: 0.258},
}
PROFILES = load_profiles()


def by_name(table):
    return {rc.value: v for rc, v in table.items()}


def test_base_table():
    assert len(BASE_SPEEDS) == 14
    assert by_name(BASE_SPEEDS) == BASE


def test_halved_table_from_ratio_one():
    assert by_name(scale_table(BASE_SPEEDS, 1.0)) == NINE_AM
    assert by_name(effective_table(BASE_SPEEDS, PROFILES["halved_9am"], 9)) == NINE_AM


@pytest.mark.parametrize("city", sorted(MEANS))
def test_city_means(city):
    for hour, mean in MEANS[city].items():
        assert slowdown_ratio(PROFILES[city], hour) == mean
    assert slowdown_ratio(PROFILES[city], 3) == 0.0


def test_stddev_stored():
    assert PROFILES["bengaluru"].stddev[9] == 0.232
    assert PROFILES["hyderabad"].stddev[23] == 0.055


@pytest.mark.parametrize("hour,sample", [
    (0, 23), (1, 3), (2, 3), (4, 3), (5, 3), (6, 3), (7, 9), (8, 9), (12, 9), (13, 9),
    (14, 17), (16, 17), (20, 17), (21, 23), (22, 23),
])
def test_nearest_sample_hour(hour, sample):
    # 6 is equidistant from 3 and 9, 13 from 9 and 17, 1 from 23 and 3: earlier hour of day wins
    p = PROFILES["delhi"]
    assert slowdown_ratio(p, hour) == p.samples[sample]


def test_reference_hour_is_base():
    for city in MEANS:
        assert effective_table(BASE_SPEEDS, PROFILES[city], 3) == dict(BASE_SPEEDS)


def test_quarter_ratio():
    assert scale_table(BASE_SPEEDS, 0.25)[RoadClass.MOTORWAY] == 72.0


def test_monotone_and_bounded():
    ratios = [0.0, 0.1, 0.5, 0.846, 1.0, 3.0, 40.0]
    for lo, hi in zip(ratios, ratios[1:]):
        a, b = scale_table(BASE_SPEEDS, lo), scale_table(BASE_SPEEDS, hi)
        for rc in BASE_SPEEDS:
            assert b[rc] <= a[rc] <= BASE_SPEEDS[rc]
    assert min(scale_table(BASE_SPEEDS, 100.0).values()) == 1.0
    with pytest.raises(ValueError):
        scale_table(BASE_SPEEDS, -0.1)


def test_velocity_profile_tables():
    vp = VelocityProfile(profiles=PROFILES)
    assert vp.table() == dict(BASE_SPEEDS)
    assert vp.table("Bengaluru", None) == dict(BASE_SPEEDS)
    assert vp.table("BENGALURU", 9)[RoadClass.MOTORWAY] == pytest.approx(90 / 1.846)
    with pytest.raises(ConfigError):
        vp.table("atlantis", 9)


def test_parse_errors():
    with pytest.raises(ConfigError):
        parse_profiles("9 = 0.5, 0.1\n")
    with pytest.raises(ConfigError):
        parse_profiles("city = x\n9 = abc\n")
    with pytest.raises(ConfigError):
        parse_profiles("city = x\n9 = -0.5\n")
    with pytest.raises(ConfigError):
        parse_profiles("city = x\n3 = 0.5\n")
    with pytest.raises(ConfigError):
        parse_profiles("city = x\n9 = 0.5\n9 = 0.6\n")
    with pytest.raises(ConfigError):
        parse_profiles("city = x\ncity = x\n")
    with pytest.raises(ConfigError):
        parse_profiles("city = x\n25 = 0.5\n")
    with pytest.raises(ConfigError):
        slowdown_ratio(TrafficProfile("empty"), 9)


def test_parse_roundtrip_comments():
    p = parse_profiles("# c\ncity = Pune  # trailing\n9 = 0.7\n")["pune"]
    assert p.samples == {9: 0.7, 3: 0.0}
    assert p.stddev[9] == 0.0


def test_duration_halves_on_fixture(steep_flat_engine):
    from ecoroute.geo import GeoPoint
    from ecoroute.router import Metric

    eng = steep_flat_engine
    src, dst = GeoPoint(13.0, 77.5), GeoPoint(13.0, 77.509)
    base = eng.route(eng.query(src, dst, metric=Metric.DISTANCE))
    slow = eng.route(eng.query(src, dst, metric=Metric.DISTANCE, hour=9, city="halved_9am"))
    assert slow.node_path == base.node_path
    # halved residential speed over the grade penalty stays above the 1 km/h floor
    assert base.total_duration / slow.total_duration == pytest.approx(0.5, abs=1e-9)
