"""Exhaustive simple-path search used as the shortest-path oracle."""


def all_simple_paths(graph, src, dst):
    """Yield ``(edge_list, node_list)`` for every simple path from src to dst."""
    out = {}
    for e in graph.edges():
        out.setdefault(e.source, []).append(e)
    stack = [(src, [], [src])]
    while stack:
        u, edges, nodes = stack.pop()
        if u == dst:
            yield edges, nodes
            continue
        for e in out.get(u, ()):
            if e.target not in nodes:
                stack.append((e.target, edges + [e.index], nodes + [e.target]))


def best_paths(graph, src, dst, weight, rel=1e-12):
    """Minimum cost and every node sequence achieving it (within ``rel``)."""
    found = [(sum(weight[e] for e in edges), nodes) for edges, nodes in all_simple_paths(graph, src, dst)]
    if not found:
        return None, []
    best = min(c for c, _ in found)
    tol = rel * max(abs(best), 1.0)
    return best, [nodes for c, nodes in found if c <= best + tol]
