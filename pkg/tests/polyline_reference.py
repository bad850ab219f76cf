"""Stand-alone polyline codec written from the published algorithm description.

Deliberately shares no code with the package: it works on bit strings
rather than integer shifts so the two implementations fail differently.
"""
from decimal import ROUND_HALF_UP, Decimal


def to_int(x):
    # ROUND_HALF_UP on the magnitude is round-half-away-from-zero
    return int((Decimal(repr(x)) * 100000).quantize(Decimal(1), rounding=ROUND_HALF_UP))


def encode_value(v):
    bits = v * 2 if v >= 0 else -v * 2 - 1  # zig-zag: same as shift-left then NOT for negatives
    binary = format(bits, "b")
    groups = []
    while binary:
        groups.append(binary[-5:])
        binary = binary[:-5]
    if not groups:
        groups = ["0"]
    out = []
    for i, g in enumerate(groups):
        n = int(g, 2)
        if i < len(groups) - 1:
            n += 32
        out.append(chr(n + 63))
    return "".join(out)


def encode(points):
    out, prev = [], (0, 0)
    for lat, lon in points:
        cur = (to_int(lat), to_int(lon))
        out.append(encode_value(cur[0] - prev[0]) + encode_value(cur[1] - prev[1]))
        prev = cur
    return "".join(out)


def decode_values(text):
    values, groups = [], []
    for ch in text:
        n = ord(ch) - 63
        if n < 0 or n > 63:
            raise ValueError(ch)
        groups.append(format(n & 31, "05b"))
        if n < 32:
            bits = int("".join(reversed(groups)), 2)
            values.append(bits // 2 if bits % 2 == 0 else -(bits + 1) // 2)
            groups = []
    if groups:
        raise ValueError("dangling group")
    return values


def decode(text):
    vals = decode_values(text)
    pts, lat, lon = [], 0, 0
    for i in range(0, len(vals), 2):
        lat += vals[i]
        lon += vals[i + 1]
        pts.append((lat / 100000, lon / 100000))
    return pts
