"""Finite approximations of models: trees of Farey graphs and random generic growth."""
from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .errors import ModelSpecError
from .farey import build_level, level_counts
from .graph import Edge, Graph, graph_to_dict
from .kclass import is_in_K


@dataclass(frozen=True)
class TreeEdge:
    u: int
    v: int
    attach_u: int
    attach_v: int


@dataclass(frozen=True)
class ModelSpec:
    nodes: tuple[tuple[int, int], ...]  # (node id, level)
    edges: tuple[TreeEdge, ...] = ()

    def __post_init__(self) -> None:
        levels: dict[int, int] = {}
        for node, level in self.nodes:
            if node in levels:
                raise ModelSpecError(f"duplicate node {node}")
            if not isinstance(level, int) or level < 1:
                raise ModelSpecError(f"node {node}: level must be an integer >= 1")
            levels[node] = level
        parent = {k: k for k in levels}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            for node, attach in ((e.u, e.attach_u), (e.v, e.attach_v)):
                if node not in levels:
                    raise ModelSpecError(f"edge ({e.u}, {e.v}) uses unknown node {node}")
                size = level_counts(levels[node])[0]
                if not 0 <= attach < size:
                    raise ModelSpecError(
                        f"attachment {attach} out of range for node {node} (F_{levels[node]} has {size} vertices)"
                    )
            ru, rv = find(e.u), find(e.v)
            if ru == rv:
                raise ModelSpecError(f"tree edge ({e.u}, {e.v}) closes a cycle")
            parent[ru] = rv

    @property
    def levels(self) -> dict[int, int]:
        return dict(self.nodes)

    def to_dict(self) -> dict:
        return {
            "nodes": [{"id": k, "level": n} for k, n in self.nodes],
            "edges": [
                {"u": e.u, "v": e.v, "attach_u": e.attach_u, "attach_v": e.attach_v}
                for e in self.edges
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ModelSpec":
        try:
            nodes = tuple((int(n["id"]), n["level"]) for n in data["nodes"])
            edges = tuple(
                TreeEdge(int(e["u"]), int(e["v"]), int(e["attach_u"]), int(e["attach_v"]))
                for e in data.get("edges", [])
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelSpecError(f"malformed model spec: {exc}") from exc
        return cls(nodes, edges)

    @classmethod
    def from_json(cls, text: str) -> "ModelSpec":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class TreeModel:
    graph: Graph
    copy_of: tuple[frozenset[int], ...]  # tree nodes whose copy contains each vertex
    original_id: tuple[dict[int, int], ...]  # per vertex: node -> id inside that F_n
    identified: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    copies: dict[int, tuple[int, ...]]  # node -> graph ids indexed by original id

    def to_dict(self) -> dict:
        out = graph_to_dict(self.graph)
        out["copy_of"] = [sorted(s) for s in self.copy_of]
        out["original_id"] = [{str(k): v for k, v in sorted(d.items())} for d in self.original_id]
        out["identified"] = [[list(a), list(b)] for a, b in self.identified]
        return out


def build_tree_model(spec: ModelSpec) -> TreeModel:
    """Glue copies of F_{n_x} at the attachment vertices named by the forest spec.

    Graph ids are assigned node by node in ascending node id; a vertex
    identified with one already placed reuses that id.
    """
    levels = spec.levels
    parent: dict[tuple[int, int], tuple[int, int]] = {}

    def find(x: tuple[int, int]) -> tuple[int, int]:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in spec.edges:
        a, b = find((e.u, e.attach_u)), find((e.v, e.attach_v))
        parent[max(a, b)] = min(a, b)
    placed: dict[tuple[int, int], int] = {}
    copy_of: list[set[int]] = []
    original: list[dict[int, int]] = []
    identified: list[tuple[tuple[int, int], tuple[int, int]]] = []
    edges: list[Edge] = []
    copies: dict[int, tuple[int, ...]] = {}
    for node in sorted(levels):
        f = build_level(levels[node]).graph
        ids = []
        for v in f.vertices():
            key = (node, v)
            root = find(key)
            if root in placed:
                gid = placed[root]
                identified.append((root, key))
            else:
                gid = placed[root] = len(copy_of)
                copy_of.append(set())
                original.append({})
            copy_of[gid].add(node)
            original[gid][node] = v
            ids.append(gid)
        copies[node] = tuple(ids)
        edges.extend((ids[u], ids[v]) for u, v in f.edges)
    return TreeModel(
        Graph(len(copy_of), edges),
        tuple(frozenset(s) for s in copy_of),
        tuple(original),
        tuple(identified),
        copies,
    )


@dataclass(frozen=True)
class GenericConfig:
    """Relative weights of the three one-point extension kinds."""

    isolated: float = 0.2
    pendant: float = 0.4
    apex: float = 0.4


@dataclass(frozen=True)
class ExtensionStep:
    vertex: int
    kind: str  # "isolated" | "pendant" | "apex"
    attach: tuple[int, ...] = ()


def build_generic(
    seed: int, steps: int, config: GenericConfig | None = None
) -> tuple[Graph, list[ExtensionStep]]:
    """Grow a graph by ``steps`` random strong one-point extensions.

    An apex is only placed on an edge lying in fewer than two triangles, so
    every intermediate graph stays in K. Falls back to the next available
    kind when the drawn one has no target.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    cfg = config or GenericConfig()
    rng = random.Random(seed)
    adj: list[set[int]] = []
    open_edges: list[Edge] = []  # edges in fewer than two triangles, in insertion order
    tri_count: dict[Edge, int] = {}
    log: list[ExtensionStep] = []
    kinds = ("isolated", "pendant", "apex")
    weights = (cfg.isolated, cfg.pendant, cfg.apex)
    if sum(weights) <= 0:
        raise ValueError("extension weights must not all be zero")

    def add_edge(u: int, v: int, tris: int) -> None:
        e = (min(u, v), max(u, v))
        tri_count[e] = tris
        if tris < 2:
            open_edges.append(e)

    for _ in range(steps):
        kind = rng.choices(kinds, weights)[0]
        if kind == "apex" and not open_edges:
            kind = "pendant"
        if kind == "pendant" and not adj:
            kind = "isolated"
        v = len(adj)
        if kind == "isolated":
            adj.append(set())
            log.append(ExtensionStep(v, kind))
        elif kind == "pendant":
            u = rng.randrange(v)
            adj.append({u})
            adj[u].add(v)
            add_edge(u, v, 0)
            log.append(ExtensionStep(v, kind, (u,)))
        else:
            i = rng.randrange(len(open_edges))
            p, q = open_edges[i]
            tri_count[(p, q)] += 1
            if tri_count[(p, q)] >= 2:
                open_edges[i] = open_edges[-1]
                open_edges.pop()
            adj.append({p, q})
            adj[p].add(v)
            adj[q].add(v)
            add_edge(p, v, 1)
            add_edge(q, v, 1)
            log.append(ExtensionStep(v, kind, (p, q)))
    return Graph.from_adjacency(adj), log


@dataclass(frozen=True)
class TComplianceReport:
    edges_two_triangles: int
    edges_one_triangle: int
    edges_no_triangle: int
    edges_violating: tuple[Edge, ...]
    k_member: bool

    def to_dict(self) -> dict:
        return {
            "edges_two_triangles": self.edges_two_triangles,
            "edges_one_triangle": self.edges_one_triangle,
            "edges_no_triangle": self.edges_no_triangle,
            "edges_violating": [list(e) for e in self.edges_violating],
            "k_member": self.k_member,
        }


def t_compliance(g: Graph) -> TComplianceReport:
    counts = {0: 0, 1: 0, 2: 0}
    bad: list[Edge] = []
    for u, v in g.edges:
        t = len(g.adj[u] & g.adj[v])
        if t > 2:
            bad.append((u, v))
        else:
            counts[t] += 1
    return TComplianceReport(counts[2], counts[1], counts[0], tuple(bad), is_in_K(g).member)
