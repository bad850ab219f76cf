"""Pure-Python hot kernels.

These are the reference implementations; ``_speedups.pyx`` mirrors them
with typed loops. Both must return identical results.
"""
from heapq import heappop, heappush

from .errors import PolylineDecodeError

MAX_ABS_INT = 1 << 30


def _path_nodes(parent_edge, edge_source, node):
    nodes = [node]
    e = parent_edge[node]
    while e >= 0:
        node = edge_source[e]
        nodes.append(node)
        e = parent_edge[node]
    nodes.reverse()
    return nodes


def dijkstra(indptr, edge_source, edge_target, weight, src, dst):
    """Single-pair Dijkstra over a CSR graph.

    Returns ``(cost, edges)`` with the edge indices of the path, or None if
    ``dst`` is unreachable. Among equal-cost paths the one with the
    lexicographically smallest node sequence wins; parallel edges tie to
    the lowest edge index.
    """
    indptr = indptr.tolist() if hasattr(indptr, "tolist") else indptr
    edge_source = edge_source.tolist() if hasattr(edge_source, "tolist") else edge_source
    edge_target = edge_target.tolist() if hasattr(edge_target, "tolist") else edge_target
    weight = weight.tolist() if hasattr(weight, "tolist") else weight
    n = len(indptr) - 1
    inf = float("inf")
    dist = [inf] * n
    parent = [-1] * n
    done = [False] * n
    dist[src] = 0.0
    heap = [(0.0, src)]
    while heap:
        d, u = heappop(heap)
        if done[u]:
            continue
        done[u] = True
        if u == dst:
            break
        for e in range(indptr[u], indptr[u + 1]):
            v = edge_target[e]
            if done[v]:
                continue
            nd = d + weight[e]
            if nd < dist[v]:
                dist[v] = nd
                parent[v] = e
                heappush(heap, (nd, v))
            elif nd == dist[v] and parent[v] >= 0:
                old = parent[v]
                ou = edge_source[old]
                if ou == u:
                    if e < old:
                        parent[v] = e
                # compare whole candidates: one parent path may prefix the other
                elif _path_nodes(parent, edge_source, u) + [v] < _path_nodes(
                    parent, edge_source, ou
                ) + [v]:
                    parent[v] = e
    if not done[dst]:
        return None
    edges = []
    node = dst
    while parent[node] >= 0:
        e = parent[node]
        edges.append(e)
        node = edge_source[e]
    edges.reverse()
    return dist[dst], edges


def encode_ints(values):
    """Polyline varint encoding of a sequence of signed integers."""
    out = []
    append = out.append
    for a in values:
        if not -MAX_ABS_INT < a < MAX_ABS_INT:
            raise OverflowError(f"{a} does not fit the 30-bit polyline range")
        b = a << 1
        if a < 0:
            b = ~b
        while b >= 0x20:
            append(chr((0x20 | (b & 0x1F)) + 63))
            b >>= 5
        append(chr(b + 63))
    return "".join(out)


def decode_ints(text):
    """Inverse of :func:`encode_ints`."""
    values = []
    i = 0
    n = len(text)
    while i < n:
        result = 0
        shift = 0
        while True:
            if i >= n:
                raise PolylineDecodeError("truncated chunk", i)
            c = ord(text[i]) - 63
            if not 0 <= c <= 63:
                raise PolylineDecodeError(f"character {text[i]!r} outside [63, 126]", i)
            i += 1
            result |= (c & 0x1F) << shift
            shift += 5
            if c < 0x20:
                break
            if shift > 35:
                raise PolylineDecodeError("chunk too long", i - 1)
        values.append(~(result >> 1) if result & 1 else result >> 1)
    return values
