"""Slow, obviously-correct reference implementations used only by tests."""
from __future__ import annotations

import itertools

import networkx as nx

from fareylab.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices())
    h.add_edges_from(g.edges)
    return h


def brute_canonical(g: Graph, pins: tuple[int, ...] = ()) -> tuple:
    """Lexicographically least adjacency string over all pin-respecting relabellings."""
    rest = [v for v in g.vertices() if v not in pins]
    best = None
    for perm in itertools.permutations(rest):
        order = list(pins) + list(perm)
        key = tuple(
            int(g.has_edge(order[i], order[j]))
            for i in range(len(order))
            for j in range(i + 1, len(order))
        )
        if best is None or key < best:
            best = key
    return best


def nx_blocks(g: Graph) -> set[frozenset]:
    return {
        frozenset(tuple(sorted(e)) for e in comp)
        for comp in nx.biconnected_component_edges(to_nx(g))
    }


def brute_geodesics(g: Graph, x: int, y: int) -> list[tuple[int, ...]]:
    h = to_nx(g)
    if x == y:
        return [(x,)]
    if not nx.has_path(h, x, y):
        return []
    paths = [tuple(p) for p in nx.all_simple_paths(h, x, y)]
    m = min(len(p) for p in paths)
    return sorted(p for p in paths if len(p) == m)


def brute_is_strong(a, g: Graph) -> bool:
    """Every induced subgraph strictly containing A has a removable vertex outside A."""
    a = set(a)
    rest = [v for v in g.vertices() if v not in a]
    for r in range(1, len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            s = a | set(extra)
            ok = False
            for v in extra:
                nb = g.adj[v] & s
                if len(nb) <= 1:
                    ok = True
                    break
                if len(nb) == 2:
                    p, q = nb
                    if g.has_edge(p, q):
                        ok = True
                        break
            if not ok:
                return False
    return True


def brute_p_c(g: Graph, c_graph: Graph, x: int, y: int) -> bool:
    """Some vertex set containing x, y induces a copy of c with its ears at x and y."""
    n = c_graph.vertex_count
    others = [v for v in g.vertices() if v not in (x, y)]
    target = brute_canonical(c_graph, (0, 1))
    for extra in itertools.combinations(others, n - 2):
        verts = [x, y, *extra]
        sub = Graph.from_adjacency([[verts.index(w) for w in g.adj[v] if w in verts] for v in verts])
        if brute_canonical(sub, (0, 1)) == target or brute_canonical(sub, (1, 0)) == target:
            return True
    return False
