"""Free amalgams and the K-preserving amalgamation over a strong base."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import AmalgamationError
from .graph import Graph
from .kclass import PeelSequence, is_in_K, is_strong


@dataclass(frozen=True)
class AmalgamResult:
    graph: Graph
    embed_b: dict[int, int]
    embed_c: dict[int, int]
    collapsed: tuple[tuple[int, int], ...] = ()
    readd_order: tuple[int, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "vertex_count": self.graph.vertex_count,
            "edges": [list(e) for e in self.graph.edges],
            "embed_b": {str(k): v for k, v in sorted(self.embed_b.items())},
            "embed_c": {str(k): v for k, v in sorted(self.embed_c.items())},
            "collapsed": [list(p) for p in self.collapsed],
            "readd_order": list(self.readd_order),
        }


def _check_glue(a: Iterable[int], b: Graph, c: Graph, glue: Mapping[int, int]) -> tuple[int, ...]:
    a = tuple(sorted(set(a)))
    if set(glue) != set(a):
        raise AmalgamationError("glue must map exactly the vertices of A")
    for v in a:
        b._check_vertex(v)
        c._check_vertex(glue[v])
    if len(set(glue.values())) != len(glue):
        raise AmalgamationError("glue must be injective")
    for i, u in enumerate(a):
        for v in a[i + 1:]:
            if b.has_edge(u, v) != c.has_edge(glue[u], glue[v]):
                raise AmalgamationError(
                    f"glue does not preserve the structure of A at ({u}, {v})"
                )
    return a


def free_amalgam(a: Iterable[int], b: Graph, c: Graph, glue: Mapping[int, int]) -> AmalgamResult:
    """B and C glued along A with no edges between B-A and C-A.

    ``a`` is a set of B-vertices; ``glue`` sends each of them to its copy in C.
    The result keeps C's vertex ids and appends B-A in ascending order.
    """
    a = _check_glue(a, b, c, glue)
    embed = dict(glue)
    nxt = c.vertex_count
    for v in b.vertices():
        if v not in embed:
            embed[v] = nxt
            nxt += 1
    edges = list(c.edges) + [(embed[u], embed[v]) for u, v in b.edges]
    return AmalgamResult(
        Graph(nxt, edges), embed, {v: v for v in c.vertices()}, (), tuple(sorted(set(b.vertices()) - set(a)))
    )


def amalgamate_in_K(a: Iterable[int], b: Graph, c: Graph, glue: Mapping[int, int]) -> AmalgamResult:
    """Amalgamate B and C over a strong A inside the class K.

    B is peeled down to A and its vertices re-added in reverse order on top
    of C. A re-added triangle apex whose base edge already lies in two
    triangles is identified with one of the existing apexes instead of being
    added; the lowest-id apex that keeps the growing image of B strong is used.
    """
    a = _check_glue(a, b, c, glue)
    for name, g in (("B", b), ("C", c)):
        if not is_in_K(g).member:
            raise AmalgamationError(f"{name} is not in K")
    ok_b, witness_b = is_strong(a, b)
    if not ok_b:
        raise AmalgamationError(f"A is not strong in B (stuck at {sorted(witness_b)})")
    ok_c, witness_c = is_strong(glue.values(), c)
    if not ok_c:
        raise AmalgamationError(f"A is not strong in C (stuck at {sorted(witness_c)})")
    assert isinstance(witness_b, PeelSequence)

    adj = [set(s) for s in c.adj]
    embed = dict(glue)
    collapsed: list[tuple[int, int]] = []
    order = tuple(step.vertex for step in reversed(witness_b.steps))
    for v in order:
        images = [embed[w] for w in b.adj[v] if w in embed]
        if len(images) == 2 and images[1] in adj[images[0]]:
            p, q = images
            apexes = adj[p] & adj[q]
            if len(apexes) >= 2:
                r = _collapse_target(adj, set(embed.values()), p, q, apexes)
                if r is None:
                    raise AmalgamationError(
                        f"no apex over ({p}, {q}) keeps the image of B strong"
                    )
                embed[v] = r
                collapsed.append((v, r))
                continue
        w = len(adj)
        adj.append(set(images))
        for x in images:
            adj[x].add(w)
        embed[v] = w
    return AmalgamResult(
        Graph.from_adjacency(adj),
        embed,
        {v: v for v in c.vertices()},
        tuple(collapsed),
        order,
    )


def _collapse_target(adj, used: set[int], p: int, q: int, apexes) -> int | None:
    d = Graph.from_adjacency(adj)
    for r in sorted(apexes):
        if r in used or adj[r] & used != {p, q}:
            continue
        if is_strong(used | {r}, d)[0]:
            return r
    return None
