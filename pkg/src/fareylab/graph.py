"""Finite simple undirected graphs and the handful of algorithms everything else needs.

Vertices are the integers ``0 .. n-1``. A :class:`Graph` is immutable; every
function here is pure.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import CapError, GraphError

Edge = tuple[int, int]
Path = tuple[int, ...]
Cycle = tuple[int, ...]

DEFAULT_CANON_CAP = 16


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """A finite simple undirected graph on vertices ``0 .. vertex_count-1``."""

    __slots__ = ("_adj", "_edges", "_hash")

    def __init__(self, vertex_count: int, edges: Iterable[Sequence[int]] = ()):
        if not isinstance(vertex_count, int) or vertex_count < 0:
            raise GraphError(f"vertex_count must be a non-negative integer, got {vertex_count!r}")
        adj: list[set[int]] = [set() for _ in range(vertex_count)]
        for pair in edges:
            if len(pair) != 2:
                raise GraphError(f"edge {pair!r} does not have exactly two endpoints")
            u, v = pair
            if not (isinstance(u, int) and isinstance(v, int)):
                raise GraphError(f"edge {pair!r} has non-integer endpoints")
            if u == v:
                raise GraphError(f"self-loop on vertex {u} in edge {pair!r}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphError(f"edge {pair!r} has an endpoint outside 0..{vertex_count - 1}")
            adj[u].add(v)
            adj[v].add(u)
        self._adj = tuple(frozenset(s) for s in adj)
        self._edges = None
        self._hash = None

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]]) -> "Graph":
        """Build from adjacency sets that are already known to be valid and symmetric."""
        g = cls.__new__(cls)
        g._adj = tuple(frozenset(s) for s in adj)
        g._edges = None
        g._hash = None
        return g

    @property
    def vertex_count(self) -> int:
        return len(self._adj)

    n = vertex_count

    @property
    def adj(self) -> tuple[frozenset[int], ...]:
        return self._adj

    @property
    def edges(self) -> tuple[Edge, ...]:
        if self._edges is None:
            self._edges = tuple(
                (u, v) for u in range(len(self._adj)) for v in sorted(self._adj[u]) if u < v
            )
        return self._edges

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self._adj) // 2

    def vertices(self) -> range:
        return range(len(self._adj))

    def neighbors(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < len(self._adj) and v in self._adj[u]

    def _check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < len(self._adj)):
            raise GraphError(f"unknown vertex {v!r}")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._adj)
        return self._hash

    def __repr__(self) -> str:
        return f"Graph({self.vertex_count}, {list(self.edges)!r})"


def new_graph(vertex_count: int, edges: Iterable[Sequence[int]]) -> Graph:
    return Graph(vertex_count, edges)


def valency(g: Graph, v: int) -> int:
    return len(g.neighbors(v))


def bfs_distances(g: Graph, source: int) -> list[int | None]:
    g._check_vertex(source)
    dist: list[int | None] = [None] * g.vertex_count
    dist[source] = 0
    queue = deque([source])
    adj = g.adj
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] is None:
                dist[w] = du
                queue.append(w)
    return dist


def distance(g: Graph, x: int, y: int) -> int | None:
    """Shortest-path length from x to y, or ``None`` when they are in different components."""
    g._check_vertex(y)
    return bfs_distances(g, x)[y]


def geodesics(g: Graph, x: int, y: int) -> list[Path]:
    """All shortest paths from x to y, sorted. Empty when y is unreachable.

    Breadth-first layering from x, then a backward walk from y through
    predecessors (neighbours one layer closer to x).
    """
    g._check_vertex(y)
    dist = bfs_distances(g, x)
    if dist[y] is None:
        return []
    adj = g.adj
    out: list[Path] = []

    def back(v: int, suffix: list[int]) -> None:
        if v == x:
            out.append(tuple(reversed(suffix)))
            return
        dv = dist[v]
        for w in adj[v]:
            if dist[w] == dv - 1:
                suffix.append(w)
                back(w, suffix)
                suffix.pop()

    back(y, [y])
    out.sort()
    return out


def triangles_on_edge(g: Graph, e: Sequence[int]) -> frozenset[int]:
    u, v = e
    g._check_vertex(u)
    g._check_vertex(v)
    if not g.has_edge(u, v):
        raise GraphError(f"{tuple(e)!r} is not an edge")
    return g.adj[u] & g.adj[v]


def _canonical_cycle(cyc: Sequence[int]) -> Cycle:
    k = len(cyc)
    i = min(range(k), key=cyc.__getitem__)
    rot = tuple(cyc[i:]) + tuple(cyc[:i])
    if rot[-1] < rot[1]:
        rot = (rot[0],) + tuple(reversed(rot[1:]))
    return rot


def simple_cycles_through_edge(g: Graph, e: Sequence[int], max_len: int) -> list[Cycle]:
    """Simple cycles of length <= max_len whose vertex set contains both endpoints of e.

    The edge e is either a side of the cycle or a chord of it. Cycles are
    returned rotated to start at their smallest vertex, sorted.
    """
    u, v = e
    triangles_on_edge(g, e)  # validates the edge
    if max_len < 3:
        raise GraphError("max_len must be at least 3")
    adj = g.adj
    paths: list[Path] = []
    stack = [u]
    on = {u}

    def extend(w: int) -> None:
        for x in adj[w]:
            if x == v:
                paths.append(tuple(stack) + (v,))
            elif x not in on and len(stack) < max_len - 1:
                stack.append(x)
                on.add(x)
                extend(x)
                on.discard(x)
                stack.pop()

    extend(u)
    found: set[Cycle] = set()
    for p, q in combinations(paths, 2):
        if len(p) + len(q) - 2 > max_len:
            continue
        if set(p[1:-1]) & set(q[1:-1]):
            continue
        found.add(_canonical_cycle(p + tuple(reversed(q[1:-1]))))
    return sorted(found)


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on s; new ids follow the ascending order of the old ones."""
    verts = sorted(set(s))
    for v in verts:
        g._check_vertex(v)
    index = {old: new for new, old in enumerate(verts)}
    adj = [[index[w] for w in g.adj[old] if w in index] for old in verts]
    return Graph.from_adjacency(adj), index


def remove_vertices(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    drop = set(s)
    return induced_subgraph(g, (v for v in g.vertices() if v not in drop))


def connected_components(g: Graph) -> list[frozenset[int]]:
    seen = [False] * g.vertex_count
    comps = []
    for s in g.vertices():
        if seen[s]:
            continue
        comp = []
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            comp.append(u)
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.vertex_count == 0 or len(connected_components(g)) == 1


# --- canonical forms ----------------------------------------------------------


@dataclass(frozen=True)
class CanonicalCode:
    code: bytes
    pin_images: tuple[int, ...]


def _refine(adj: Sequence[frozenset[int]], colors: list[int]) -> list[int]:
    ncolors = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(len(adj))]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [rank[s] for s in sigs]
        if len(rank) == ncolors:
            return new
        colors, ncolors = new, len(rank)


def _leaf_code(adj: Sequence[frozenset[int]], colors: list[int], npins: int) -> bytes:
    order = sorted(range(len(adj)), key=colors.__getitem__)
    bits = bytearray([len(adj), npins])
    for i, v in enumerate(order):
        row = adj[v]
        bits.extend(1 if order[j] in row else 0 for j in range(i + 1, len(order)))
    return bytes(bits)


def canonical_form(g: Graph, pins: Sequence[int] = (), cap: int = DEFAULT_CANON_CAP) -> CanonicalCode:
    """Pin-respecting canonical code: equal codes iff an isomorphism maps pins[i] to pins[i].

    Individualisation-refinement search with twin pruning. Exact for every
    graph under the cap; the cap only bounds the worst case.
    """
    n = g.vertex_count
    if n > cap:
        raise CapError(f"canonical_form: {n} vertices exceeds cap {cap}")
    pins = tuple(pins)
    if len(set(pins)) != len(pins):
        raise GraphError("pins must be distinct")
    for p in pins:
        g._check_vertex(p)
    adj = g.adj
    k = len(pins)
    colors = [k] * n
    for i, p in enumerate(pins):
        colors[p] = i

    best: list[bytes] = []

    def search(colors: list[int]) -> None:
        colors = _refine(adj, colors)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            code = _leaf_code(adj, colors, k)
            if not best or code < best[0]:
                best[:] = [code]
            return
        reps: list[int] = []
        for v in target:
            # swapping twins in one cell preserves the colouring, so their subtrees coincide
            if not any(adj[v] - {r} == adj[r] - {v} for r in reps):
                reps.append(v)
        for v in reps:
            branch = [2 * c + 1 for c in colors]
            branch[v] = 2 * colors[v]
            search(branch)

    search(colors)
    return CanonicalCode(best[0] if best else bytes([0, k]), tuple(range(k)))


# --- pinned induced embeddings ---------------------------------------------------


def _search_order(pattern: Graph, pinned: Sequence[int]) -> list[int]:
    order = list(pinned)
    placed = set(order)
    adj = pattern.adj
    remaining = [v for v in pattern.vertices() if v not in placed]
    while remaining:
        # most already-placed neighbours first, then highest degree, then id
        v = max(remaining, key=lambda w: (len(adj[w] & placed), len(adj[w]), -w))
        order.append(v)
        placed.add(v)
        remaining.remove(v)
    return order


def induced_embeddings(
    pattern: Graph, host: Graph, pins: Mapping[int, int] | None = None
) -> Iterator[dict[int, int]]:
    """Yield every injective map pattern -> host that preserves edges and non-edges.

    ``pins`` fixes the images of some pattern vertices.
    """
    pins = dict(pins or {})
    for a, b in pins.items():
        pattern._check_vertex(a)
        host._check_vertex(b)
    if len(set(pins.values())) != len(pins):
        return
    if pattern.vertex_count > host.vertex_count:
        return
    padj, hadj = pattern.adj, host.adj
    order = _search_order(pattern, list(pins))
    earlier = {v: [w for w in order[:i]] for i, v in enumerate(order)}
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def consistent(v: int, c: int) -> bool:
        if len(hadj[c]) < len(padj[v]):
            return False
        for w in earlier[v]:
            if (w in padj[v]) != (mapping[w] in hadj[c]):
                return False
        return True

    def rec(i: int) -> Iterator[dict[int, int]]:
        if i == len(order):
            yield dict(mapping)
            return
        v = order[i]
        if v in pins:
            cands: Iterable[int] = (pins[v],)
        else:
            placed_nbrs = [mapping[w] for w in earlier[v] if w in padj[v]]
            if placed_nbrs:
                cset = set(hadj[placed_nbrs[0]])
                for h in placed_nbrs[1:]:
                    cset &= hadj[h]
                cands = sorted(cset)
            else:
                cands = host.vertices()
        for c in cands:
            if c in used or not consistent(v, c):
                continue
            mapping[v] = c
            used.add(c)
            yield from rec(i + 1)
            used.discard(c)
            del mapping[v]

    yield from rec(0)


def find_isomorphism(g1: Graph, g2: Graph, pin_map: Mapping[int, int] | None = None) -> dict[int, int] | None:
    """An isomorphism g1 -> g2 extending pin_map, or None."""
    if g1.vertex_count != g2.vertex_count or g1.edge_count != g2.edge_count:
        return None
    pin_map = dict(pin_map or {})
    if len(set(pin_map.values())) != len(pin_map):
        raise GraphError("pin_map must be injective")
    return next(induced_embeddings(g1, g2, pin_map), None)


# --- interchange ----------------------------------------------------------------


def graph_to_dict(g: Graph) -> dict:
    return {"vertex_count": g.vertex_count, "edges": [list(e) for e in g.edges]}


def graph_from_dict(data: Mapping) -> Graph:
    try:
        n = data["vertex_count"]
        edges = data["edges"]
    except (KeyError, TypeError) as exc:
        raise GraphError(f"graph JSON needs 'vertex_count' and 'edges': {exc}") from None
    return Graph(n, [tuple(e) for e in edges])


def graph_to_json(g: Graph) -> str:
    return json.dumps(graph_to_dict(g))


def graph_from_json(text: str) -> Graph:
    return graph_from_dict(json.loads(text))


def _dot_attrs(attrs: Mapping[str, object] | None) -> str:
    if not attrs:
        return ""
    body = ", ".join(f'{k}="{v}"' for k, v in sorted(attrs.items()))
    return f" [{body}]"


def to_dot(
    g: Graph,
    vertex_attrs: Mapping[int, Mapping[str, object]] | None = None,
    edge_attrs: Mapping[Edge, Mapping[str, object]] | None = None,
    name: str = "G",
) -> str:
    vertex_attrs = vertex_attrs or {}
    edge_attrs = edge_attrs or {}
    lines = [f"graph {name} {{"]
    for v in g.vertices():
        lines.append(f"  {v}{_dot_attrs(vertex_attrs.get(v))};")
    for u, v in g.edges:
        lines.append(f"  {u} -- {v}{_dot_attrs(edge_attrs.get((u, v)))};")
    lines.append("}")
    return "\n".join(lines) + "\n"
