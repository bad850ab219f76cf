"""Turn-by-turn instructions from a route's geometry."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Optional

from .geo import bearing


class TurnType(str, Enum):
    DEPART = "depart"
    CONTINUE = "continue"
    SLIGHT_LEFT = "slight_left"
    LEFT = "left"
    SHARP_LEFT = "sharp_left"
    SLIGHT_RIGHT = "slight_right"
    RIGHT = "right"
    SHARP_RIGHT = "sharp_right"
    U_TURN = "u_turn"
    ARRIVE = "arrive"
    VIA_WAYPOINT = "via_waypoint"


# upper bounds (exclusive, degrees of |heading change|) for each band
TURN_THRESHOLDS = {"continue": 15.0, "slight": 45.0, "turn": 135.0, "sharp": 165.0}

MIRROR = {
    TurnType.SLIGHT_LEFT: TurnType.SLIGHT_RIGHT,
    TurnType.LEFT: TurnType.RIGHT,
    TurnType.SHARP_LEFT: TurnType.SHARP_RIGHT,
    TurnType.SLIGHT_RIGHT: TurnType.SLIGHT_LEFT,
    TurnType.RIGHT: TurnType.LEFT,
    TurnType.SHARP_RIGHT: TurnType.SHARP_LEFT,
}

_PHRASE = {
    TurnType.DEPART: "Head out",
    TurnType.CONTINUE: "Continue",
    TurnType.SLIGHT_LEFT: "Bear left",
    TurnType.LEFT: "Turn left",
    TurnType.SHARP_LEFT: "Make a sharp left",
    TurnType.SLIGHT_RIGHT: "Bear right",
    TurnType.RIGHT: "Turn right",
    TurnType.SHARP_RIGHT: "Make a sharp right",
    TurnType.U_TURN: "Make a U-turn",
    TurnType.ARRIVE: "Arrive at your destination",
    TurnType.VIA_WAYPOINT: "Pass the waypoint",
}


@dataclass
class Step:
    turn: TurnType
    road_name: Optional[str]
    distance: float
    start: int

    def instruction(self) -> str:
        text = _PHRASE[self.turn]
        if self.turn is TurnType.ARRIVE:
            return text
        if self.road_name:
            text += f" {'on' if self.turn in (TurnType.DEPART, TurnType.CONTINUE) else 'onto'} {self.road_name}"
        return f"{text} and go {_fmt_distance(self.distance)}"


def _fmt_distance(meters):
    if meters >= 1000:
        return f"{meters / 1000:.1f} km"
    return f"{meters:.0f} m"


def classify_turn(incoming: float, outgoing: float, thresholds: Mapping[str, float] = TURN_THRESHOLDS) -> TurnType:
    """Classify the heading change between two bearings (degrees, clockwise positive)."""
    d = (outgoing - incoming) % 360.0
    if d > 180.0:
        d -= 360.0
    mag = abs(d)
    if mag < thresholds["continue"]:
        return TurnType.CONTINUE
    if mag > thresholds["sharp"]:
        return TurnType.U_TURN
    if mag < thresholds["slight"]:
        return TurnType.SLIGHT_RIGHT if d > 0 else TurnType.SLIGHT_LEFT
    if mag < thresholds["turn"]:
        return TurnType.RIGHT if d > 0 else TurnType.LEFT
    return TurnType.SHARP_RIGHT if d > 0 else TurnType.SHARP_LEFT


def build_itinerary(route, way_names: Mapping[int, Optional[str]], thresholds=TURN_THRESHOLDS) -> list[Step]:
    """Steps for ``route``.

    A step starts with a manoeuvre at a geometry index and carries the
    distance driven until the next one. Straight continuations on the same
    named road, or on the same unnamed way, are merged.
    """
    records = route.edges
    if not records:
        return [Step(TurnType.ARRIVE, None, 0.0, 0)]
    geometry = route.geometry
    via_at = set(route.leg_starts[1:])

    def name_of(rec):
        return way_names.get(rec.way_id)

    def same_road(a, b):
        na, nb = name_of(a), name_of(b)
        if na is None or nb is None:
            return na is None and nb is None and a.way_id == b.way_id
        return na == nb

    def heading(i):
        a, b = geometry[i], geometry[i + 1]
        return bearing(a, b) if a != b else None

    steps = [Step(TurnType.DEPART, name_of(records[0]), records[0].length_m, 0)]
    last_heading = heading(0)
    for i in range(1, len(records)):
        rec = records[i]
        h = heading(i)
        if i in via_at:
            turn = TurnType.VIA_WAYPOINT
        elif h is None or last_heading is None:
            turn = TurnType.CONTINUE
        else:
            turn = classify_turn(last_heading, h, thresholds)
        if turn is TurnType.CONTINUE and same_road(records[i - 1], rec):
            steps[-1].distance += rec.length_m
        else:
            steps.append(Step(turn, name_of(rec), rec.length_m, i))
        if h is not None:
            last_heading = h
    steps.append(Step(TurnType.ARRIVE, name_of(records[-1]), 0.0, len(geometry) - 1))
    return steps


def mirrored(turn: TurnType) -> TurnType:
    return MIRROR.get(turn, turn)

