"""Colored Farey levels F_n.

F_1 is the black edge {0, 1} with apexes 2 and 3 joined by blue edges.
F_{n+1} adds, for each blue edge of F_n, a new vertex joined to both of its
endpoints by two new blue edges; every older edge turns black.

Vertex ids follow creation order. Within a level, new vertices are created
over the blue edges sorted by (newer endpoint, older endpoint), which makes
the enumeration v_1, v_2, ... reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import CapError, FareyError
from .graph import Edge, Graph, norm_edge, to_dot

DEFAULT_LEVEL_CAP = 20
_INT64_MAX = 2**63 - 1


class EdgeColor(str, Enum):
    BLACK = "black"
    BLUE = "blue"


@dataclass(frozen=True)
class ColoredFarey:
    graph: Graph
    level: int
    blue: frozenset[Edge]
    birth_level: tuple[int, ...]
    parent_edge: tuple[Edge | None, ...]

    def color(self, u: int, v: int) -> EdgeColor:
        e = norm_edge(u, v)
        if not self.graph.has_edge(*e):
            raise FareyError(f"{e} is not an edge of F_{self.level}")
        return EdgeColor.BLUE if e in self.blue else EdgeColor.BLACK

    @property
    def black(self) -> frozenset[Edge]:
        return frozenset(self.graph.edges) - self.blue

    def to_dict(self) -> dict:
        return {
            "vertex_count": self.graph.vertex_count,
            "edges": [list(e) for e in self.graph.edges],
            "level": self.level,
            "colors": {
                "black": [list(e) for e in sorted(self.black)],
                "blue": [list(e) for e in sorted(self.blue)],
            },
            "birth_level": list(self.birth_level),
            "parent_edge": [list(p) if p else None for p in self.parent_edge],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ColoredFarey":
        g = Graph(data["vertex_count"], [tuple(e) for e in data["edges"]])
        return cls(
            graph=g,
            level=data["level"],
            blue=frozenset(norm_edge(*e) for e in data["colors"]["blue"]),
            birth_level=tuple(data["birth_level"]),
            parent_edge=tuple(tuple(p) if p else None for p in data["parent_edge"]),
        )

    def to_dot(self) -> str:
        attrs = {e: {"color": "blue" if e in self.blue else "black"} for e in self.graph.edges}
        return to_dot(self.graph, edge_attrs=attrs, name=f"F{self.level}")


def level_counts(n: int) -> tuple[int, int, int]:
    """(vertices, edges, blue edges) of F_n from the closed forms."""
    if n < 1:
        raise FareyError("level must be >= 1")
    counts = (2 ** (n + 1), 2 ** (n + 2) - 3, 2 ** (n + 1))
    if max(counts) > _INT64_MAX:
        raise OverflowError(f"F_{n} counts exceed 64-bit range")
    return counts


def build_level(n: int, cap: int = DEFAULT_LEVEL_CAP) -> ColoredFarey:
    if n < 1:
        raise FareyError("level must be >= 1")
    if n > cap:
        raise CapError(f"level {n} exceeds cap {cap}")
    edges: list[Edge] = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]
    birth = [1, 1, 1, 1]
    parent: list[Edge | None] = [None, None, None, None]
    blue: list[Edge] = [(0, 2), (1, 2), (0, 3), (1, 3)]
    for level in range(2, n + 1):
        fresh: list[Edge] = []
        for a, b in blue:
            v = len(birth)
            birth.append(level)
            parent.append((a, b))
            edges.append((a, v))
            edges.append((b, v))
            fresh.append((a, v))
            fresh.append((b, v))
        # already sorted by (newer endpoint, older endpoint)
        blue = fresh
    return ColoredFarey(
        graph=Graph(len(birth), edges),
        level=n,
        blue=frozenset(blue),
        birth_level=tuple(birth),
        parent_edge=tuple(parent),
    )


def union_limit_view(f: ColoredFarey, m: int) -> ColoredFarey:
    """The copy of F_m sitting inside f, recoloured as level m."""
    if m < 1:
        raise FareyError("level must be >= 1")
    if m > f.level:
        raise FareyError(f"cannot view level {m} inside F_{f.level}")
    size = 2 ** (m + 1)
    birth = f.birth_level[:size]
    adj = [[w for w in f.graph.adj[v] if w < size] for v in range(size)]
    g = Graph.from_adjacency(adj)
    blue = frozenset(e for e in g.edges if e != (0, 1) and max(birth[e[0]], birth[e[1]]) == m)
    return ColoredFarey(
        graph=g, level=m, blue=blue, birth_level=birth, parent_edge=f.parent_edge[:size]
    )
