"""Block structure: edge classes, the vertex/class incidence forest, hulls, gates.

Two edges are equivalent when they lie on a common simple cycle, so the
classes are exactly the biconnected blocks (a bridge is a class by itself).
The incidence forest joins each vertex to every class it lies in; its convex
hulls give ``conv_M`` and with it the algebraic closure.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .errors import GraphError
from .graph import Edge, Graph, norm_edge, remove_vertices

IN_HULL = "in_hull"


def edge_equivalence_classes(g: Graph) -> list[frozenset[Edge]]:
    """Biconnected blocks as edge sets, ordered by their smallest edge.

    Iterative Hopcroft-Tarjan with an edge stack; O(V + E).
    """
    n = g.vertex_count
    adj = g.adj
    disc = [-1] * n
    low = [0] * n
    clock = 0
    blocks: list[frozenset[Edge]] = []
    for root in range(n):
        if disc[root] != -1 or not adj[root]:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(sorted(adj[root])))]
        estack: list[Edge] = []
        while stack:
            v, parent, it = stack[-1]
            descended = False
            for w in it:
                if disc[w] == -1:
                    estack.append((v, w))
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, v, iter(sorted(adj[w]))))
                    descended = True
                    break
                if w != parent and disc[w] < disc[v]:
                    estack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if descended:
                continue
            stack.pop()
            if not stack:
                continue
            p = stack[-1][0]
            low[p] = min(low[p], low[v])
            if low[v] >= disc[p]:
                block = set()
                while True:
                    e = estack.pop()
                    block.add(norm_edge(*e))
                    if e == (p, v):
                        break
                blocks.append(frozenset(block))
    blocks.sort(key=min)
    return blocks


@dataclass(frozen=True)
class BlockTree:
    """Bipartite incidence between vertex nodes and edge-class nodes.

    Node ids in :meth:`forest_adjacency`: vertex ``v`` is ``v``; class ``i``
    is ``vertex_count + i``.
    """

    vertex_count: int
    classes: tuple[frozenset[Edge], ...]
    incidence: tuple[tuple[int, int], ...]
    _adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        total = self.vertex_count + len(self.classes)
        adj: list[list[int]] = [[] for _ in range(total)]
        for v, ci in self.incidence:
            adj[v].append(self.vertex_count + ci)
            adj[self.vertex_count + ci].append(v)
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))

    @property
    def vertex_nodes(self) -> range:
        return range(self.vertex_count)

    def forest_adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def classes_of(self, v: int) -> list[int]:
        return [node - self.vertex_count for node in self._adj[v]]

    def class_vertices(self, ci: int) -> frozenset[int]:
        return frozenset(self._adj[self.vertex_count + ci])

    def cut_vertices(self) -> list[int]:
        return [v for v in range(self.vertex_count) if len(self._adj[v]) > 1]

    def to_dict(self) -> dict:
        return {
            "classes": [[list(e) for e in sorted(c)] for c in self.classes],
            "incidence": [list(p) for p in self.incidence],
        }

    def to_dot(self) -> str:
        lines = ["graph G_tree {"]
        for v in range(self.vertex_count):
            lines.append(f'  v{v} [shape="circle", label="{v}"];')
        for i in range(len(self.classes)):
            lines.append(f'  c{i} [shape="square", label="E{i}"];')
        for v, ci in self.incidence:
            lines.append(f"  v{v} -- c{ci};")
        lines.append("}")
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=128)
def build_g_tree(g: Graph) -> BlockTree:
    classes = tuple(edge_equivalence_classes(g))
    incidence = sorted(
        (v, ci) for ci, c in enumerate(classes) for v in {x for e in c for x in e}
    )
    return BlockTree(g.vertex_count, classes, tuple(incidence))


def is_forest(t: BlockTree) -> bool:
    parent = list(range(t.vertex_count + len(t.classes)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v, ci in set(t.incidence):
        a, b = find(v), find(t.vertex_count + ci)
        if a == b:
            return False
        parent[a] = b
    return True


@dataclass(frozen=True)
class HullResult:
    vertex_nodes: frozenset[int]
    class_nodes: frozenset[int]
    vertex_set: frozenset[int]


def _hull(t: BlockTree, terminals: set[int]) -> set[int]:
    """Smallest set of forest nodes containing the terminals and closed under tree paths."""
    adj = t.forest_adjacency()
    hull: set[int] = set()
    pending = set(terminals)
    while pending:
        root = min(pending)
        parent = {root: root}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in parent:
                    parent[w] = u
                    queue.append(w)
        for term in [x for x in pending if x in parent]:
            x = term
            while x not in hull and x != root:
                hull.add(x)
                x = parent[x]
            hull.add(root)
            pending.discard(term)
    return hull


def conv_m(g: Graph, b: Iterable[int], tree: BlockTree | None = None) -> HullResult:
    b = set(b)
    for v in b:
        g._check_vertex(v)
    t = tree or build_g_tree(g)
    nodes = _hull(t, b)
    vnodes = frozenset(x for x in nodes if x < t.vertex_count)
    cnodes = frozenset(x - t.vertex_count for x in nodes if x >= t.vertex_count)
    verts = set(b)
    for ci in cnodes:
        verts |= t.class_vertices(ci)
    return HullResult(vnodes, cnodes, frozenset(verts))


def acl(g: Graph, a: Iterable[int], tree: BlockTree | None = None) -> frozenset[int]:
    """Algebraic closure, computed as the vertex set of the convex hull."""
    return conv_m(g, a, tree).vertex_set


def gate(g: Graph, x: int, b: Iterable[int], tree: BlockTree | None = None) -> int | str:
    """The vertex of conv_M(b) through which every path from x into it passes.

    Returns :data:`IN_HULL` when x already lies in conv_M(b).
    """
    b = set(b)
    if not b:
        raise GraphError("gate needs a nonempty set")
    g._check_vertex(x)
    t = tree or build_g_tree(g)
    hull = conv_m(g, b, t).vertex_set
    if x in hull:
        return IN_HULL
    adj = t.forest_adjacency()
    seen = {x}
    queue = deque([x])
    found = None
    while queue:
        u = queue.popleft()
        if u < t.vertex_count and u in hull:
            found = u
            break
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if found is None or not b <= _component(g, x):
        raise GraphError(f"vertex {x} is not connected to all of {sorted(b)}")
    return found


def _component(g: Graph, x: int) -> set[int]:
    seen = {x}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def separates(g: Graph, sep: Iterable[int], left: Iterable[int], right: Iterable[int]) -> bool:
    """True iff every path from a vertex of ``left`` to one of ``right`` meets ``sep``."""
    sep = set(sep)
    left = set(left) - sep
    right = set(right) - sep
    if not left or not right:
        return True
    if left & right:
        return False
    h, index = remove_vertices(g, sep)
    starts = [index[v] for v in left]
    goal = {index[v] for v in right}
    seen = set(starts)
    queue = deque(starts)
    while queue:
        u = queue.popleft()
        if u in goal:
            return False
        for w in h.adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return True


def is_independent(
    g: Graph, b: Iterable[int], a: Iterable[int], c: Iterable[int], tree: BlockTree | None = None
) -> bool:
    """Every path from acl(b) to acl(c) passes through acl(a)."""
    t = tree or build_g_tree(g)
    return separates(g, acl(g, a, t), acl(g, b, t), acl(g, c, t))


def free_amalgam_over(
    g: Graph, a: Iterable[int], b: Iterable[int], c: Iterable[int], tree: BlockTree | None = None
) -> bool:
    """Whether acl(abc) is the free amalgam of acl(ab) and acl(ac) over acl(a) inside g."""
    t = tree or build_g_tree(g)
    a, b, c = set(a), set(b), set(c)
    base = acl(g, a, t)
    left = acl(g, a | b, t)
    right = acl(g, a | c, t)
    whole = acl(g, a | b | c, t)
    if whole != left | right or left & right != base:
        return False
    only_left = left - base
    only_right = right - base
    return not any(g.adj[u] & only_right for u in only_left)
