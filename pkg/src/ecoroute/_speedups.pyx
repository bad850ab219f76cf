# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_kernels.py`` (same contracts)."""
from libc.stdlib cimport malloc, free
from libc.math cimport INFINITY

from .errors import PolylineDecodeError

cdef long long MAX_ABS_INT = 1 << 30


cdef inline bint _less(double ka, long long na, double kb, long long nb) nogil:
    return ka < kb or (ka == kb and na < nb)


cdef void _push(double* keys, long long* nodes, Py_ssize_t* size, double k, long long n) nogil:
    cdef Py_ssize_t i = size[0]
    cdef Py_ssize_t p
    size[0] += 1
    while i > 0:
        p = (i - 1) >> 1
        if not _less(k, n, keys[p], nodes[p]):
            break
        keys[i] = keys[p]
        nodes[i] = nodes[p]
        i = p
    keys[i] = k
    nodes[i] = n


cdef void _pop(double* keys, long long* nodes, Py_ssize_t* size) nogil:
    cdef Py_ssize_t n = size[0] - 1
    cdef double k = keys[n]
    cdef long long v = nodes[n]
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t c
    size[0] = n
    while True:
        c = 2 * i + 1
        if c >= n:
            break
        if c + 1 < n and _less(keys[c + 1], nodes[c + 1], keys[c], nodes[c]):
            c += 1
        if not _less(keys[c], nodes[c], k, v):
            break
        keys[i] = keys[c]
        nodes[i] = nodes[c]
        i = c
    if n > 0:
        keys[i] = k
        nodes[i] = v


cdef list _path_nodes(long long[::1] parent, const long long[::1] edge_source, long long node):
    cdef list out = [node]
    cdef long long e = parent[node]
    while e >= 0:
        node = edge_source[e]
        out.append(node)
        e = parent[node]
    out.reverse()
    return out


def dijkstra(const long long[::1] indptr, const long long[::1] edge_source,
             const long long[::1] edge_target, const double[::1] weight,
             long long src, long long dst):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t m = edge_target.shape[0]
    cdef Py_ssize_t size = 0
    cdef double d, nd
    cdef long long u, v, e, old, ou
    cdef double* keys = <double*> malloc((m + 1) * sizeof(double))
    cdef long long* hnodes = <long long*> malloc((m + 1) * sizeof(long long))
    cdef double* dist = <double*> malloc(n * sizeof(double))
    cdef char* done = <char*> malloc(n * sizeof(char))
    parent_arr = bytearray(n * sizeof(long long))
    cdef long long[::1] parent = memoryview(parent_arr).cast("q")
    if keys == NULL or hnodes == NULL or dist == NULL or done == NULL:
        free(keys); free(hnodes); free(dist); free(done)
        raise MemoryError()
    try:
        for u in range(n):
            dist[u] = INFINITY
            done[u] = 0
            parent[u] = -1
        dist[src] = 0.0
        _push(keys, hnodes, &size, 0.0, src)
        while size > 0:
            d = keys[0]
            u = hnodes[0]
            _pop(keys, hnodes, &size)
            if done[u]:
                continue
            done[u] = 1
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
                    _push(keys, hnodes, &size, nd, v)
                elif nd == dist[v] and parent[v] >= 0:
                    old = parent[v]
                    ou = edge_source[old]
                    if ou == u:
                        if e < old:
                            parent[v] = e
                    elif _path_nodes(parent, edge_source, u) + [v] < _path_nodes(parent, edge_source, ou) + [v]:
                        parent[v] = e
        if not done[dst]:
            return None
        edges = []
        u = dst
        while parent[u] >= 0:
            e = parent[u]
            edges.append(e)
            u = edge_source[e]
        edges.reverse()
        return dist[dst], edges
    finally:
        free(keys)
        free(hnodes)
        free(dist)
        free(done)


def encode_ints(values):
    cdef long long a, b
    cdef bytearray out = bytearray()
    for obj in values:
        if not -MAX_ABS_INT < obj < MAX_ABS_INT:
            raise OverflowError(f"{obj} does not fit the 30-bit polyline range")
        a = obj
        b = a << 1
        if a < 0:
            b = ~b
        while b >= 0x20:
            out.append((0x20 | (b & 0x1F)) + 63)
            b >>= 5
        out.append(b + 63)
    return out.decode("ascii")


def decode_ints(str text):
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t n = len(text)
    cdef long long result, c
    cdef int shift
    cdef list values = []
    cdef Py_UCS4 ch
    while i < n:
        result = 0
        shift = 0
        while True:
            if i >= n:
                raise PolylineDecodeError("truncated chunk", i)
            ch = text[i]
            c = <long long> ch - 63
            if c < 0 or c > 63:
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
