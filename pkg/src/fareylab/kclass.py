"""Membership in the class K and the strong-embedding relation, by peeling.

A vertex is removable when it has valency at most 1, or valency 2 with
adjacent neighbours. Removability survives deleting other vertices, so greedy
peeling in any order decides whether every induced subgraph has a removable
vertex: if the peel gets stuck, the stuck set is an induced subgraph without
one; if it empties the graph, the first vertex of any subset to be peeled was
already removable inside that subset.
"""
from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from typing import Iterable

from .decomp import build_g_tree
from .errors import CapError, NotStrongError
from .graph import Edge, Graph, induced_subgraph, is_connected, norm_edge

BRUTE_FORCE_CAP = 16


@dataclass(frozen=True)
class RemovalReason:
    kind: str  # "valency_le_1" or "triangle_apex"
    neighbors: tuple[int, int] | None = None

    def to_json(self):
        if self.kind == "valency_le_1":
            return "valency_le_1"
        return {"triangle_apex": list(self.neighbors)}

    @classmethod
    def from_json(cls, data) -> "RemovalReason":
        if data == "valency_le_1":
            return cls("valency_le_1")
        a, b = data["triangle_apex"]
        return cls("triangle_apex", (a, b))


VALENCY_LE_1 = RemovalReason("valency_le_1")


@dataclass(frozen=True)
class PeelStep:
    vertex: int
    reason: RemovalReason


@dataclass(frozen=True)
class PeelSequence:
    base: frozenset[int]
    steps: tuple[PeelStep, ...]

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(s.vertex for s in self.steps)

    def replay(self, g: Graph) -> bool:
        """Check the sequence is a valid peel of g down to exactly ``base``."""
        alive = set(g.vertices())
        for step in self.steps:
            v = step.vertex
            if v not in alive or v in self.base:
                return False
            nbrs = g.adj[v] & alive
            if step.reason.kind == "valency_le_1":
                if len(nbrs) > 1:
                    return False
            else:
                a, b = step.reason.neighbors
                if nbrs != {a, b} or not g.has_edge(a, b):
                    return False
            alive.discard(v)
        return alive == set(self.base)

    def to_dict(self) -> dict:
        return {
            "base": sorted(self.base),
            "steps": [{"vertex": s.vertex, "reason": s.reason.to_json()} for s in self.steps],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PeelSequence":
        return cls(
            frozenset(data["base"]),
            tuple(PeelStep(s["vertex"], RemovalReason.from_json(s["reason"])) for s in data["steps"]),
        )


@dataclass(frozen=True)
class Violation:
    kind: str  # "edge_in_three_triangles" or "no_removable_vertex"
    edge: Edge | None = None
    stuck: frozenset[int] | None = None

    def to_dict(self) -> dict:
        if self.kind == "edge_in_three_triangles":
            return {"kind": self.kind, "edge": list(self.edge)}
        return {"kind": self.kind, "stuck": sorted(self.stuck)}


@dataclass(frozen=True)
class KMembershipReport:
    member: bool
    peel: PeelSequence | None = None
    violation: Violation | None = None

    def to_dict(self) -> dict:
        out: dict = {"member": self.member}
        if self.peel is not None:
            out["peel"] = self.peel.to_dict()
        if self.violation is not None:
            out["violation"] = self.violation.to_dict()
        return out


def _reason(adj, alive, v) -> RemovalReason | None:
    nbrs = [w for w in adj[v] if alive[w]]
    if len(nbrs) <= 1:
        return VALENCY_LE_1
    if len(nbrs) == 2 and nbrs[1] in adj[nbrs[0]]:
        return RemovalReason("triangle_apex", norm_edge(*nbrs))
    return None


def removable_vertices(g: Graph, protected: Iterable[int] = ()) -> frozenset[int]:
    protected = set(protected)
    alive = [True] * g.vertex_count
    return frozenset(
        v for v in g.vertices() if v not in protected and _reason(g.adj, alive, v) is not None
    )


def peel(
    g: Graph, protected: Iterable[int] = (), rng: random.Random | None = None
) -> tuple[PeelSequence, frozenset[int]]:
    """Greedily peel removable vertices outside ``protected``.

    Ties go to the lowest vertex id unless ``rng`` is given, in which case the
    next vertex is drawn uniformly from the current removable ones. Returns the
    steps taken and the unprotected vertices left when no step is possible.
    """
    base = frozenset(protected)
    for v in base:
        g._check_vertex(v)
    adj = g.adj
    alive = [True] * g.vertex_count
    steps: list[PeelStep] = []
    if rng is None:
        heap = [v for v in g.vertices() if v not in base and _reason(adj, alive, v)]
        heapq.heapify(heap)
        while heap:
            v = heapq.heappop(heap)
            if not alive[v]:
                continue
            reason = _reason(adj, alive, v)
            if reason is None:  # pragma: no cover - removability is monotone
                continue
            alive[v] = False
            steps.append(PeelStep(v, reason))
            for w in adj[v]:
                if alive[w] and w not in base and _reason(adj, alive, w):
                    heapq.heappush(heap, w)
    else:
        cands = {v for v in g.vertices() if v not in base and _reason(adj, alive, v)}
        while cands:
            v = rng.choice(sorted(cands))
            cands.discard(v)
            steps.append(PeelStep(v, _reason(adj, alive, v)))
            alive[v] = False
            for w in adj[v]:
                if alive[w] and w not in base and _reason(adj, alive, w):
                    cands.add(w)
    stuck = frozenset(v for v in g.vertices() if alive[v] and v not in base)
    return PeelSequence(base, tuple(steps)), stuck


def overfull_edge(g: Graph) -> Edge | None:
    """First edge (in edge order) lying in three or more triangles."""
    for u, v in g.edges:
        if len(g.adj[u] & g.adj[v]) > 2:
            return (u, v)
    return None


def is_in_K(g: Graph) -> KMembershipReport:
    bad = overfull_edge(g)
    if bad is not None:
        return KMembershipReport(False, violation=Violation("edge_in_three_triangles", edge=bad))
    seq, stuck = peel(g)
    if stuck:
        return KMembershipReport(False, violation=Violation("no_removable_vertex", stuck=stuck))
    return KMembershipReport(True, peel=seq)


def is_strong(a: Iterable[int], b: Graph) -> tuple[bool, PeelSequence | frozenset[int]]:
    """Whether ``a`` is strong in ``b``; returns the peel witness or the stuck remainder."""
    seq, stuck = peel(b, a)
    if stuck:
        return False, stuck
    return True, seq


def brute_force_K_check(g: Graph, cap: int = BRUTE_FORCE_CAP) -> bool:
    """Check membership in K directly over every nonempty induced subgraph."""
    n = g.vertex_count
    if n > cap:
        raise CapError(f"brute force check limited to {cap} vertices, got {n}")
    if overfull_edge(g) is not None:
        return False
    nb = [sum(1 << w for w in g.adj[v]) for v in range(n)]
    for mask in range(1, 1 << n):
        ok = False
        m = mask
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            inside = nb[v] & mask
            deg = inside.bit_count()
            if deg <= 1:
                ok = True
                break
            if deg == 2:
                a = (inside & -inside).bit_length() - 1
                b = (inside ^ (1 << a)).bit_length() - 1
                if nb[a] >> b & 1:
                    ok = True
                    break
        if not ok:
            return False
    return True


def count_removable_over(a: Iterable[int], b: Graph) -> int:
    a = frozenset(a)
    strong, _ = is_strong(a, b)
    if not strong:
        raise NotStrongError(f"{sorted(a)} is not strong in the given graph")
    return len(removable_vertices(b, a))


# --- strings of lozenges ---------------------------------------------------------


@dataclass(frozen=True)
class LozengeString:
    lozenges: tuple[frozenset[int], ...]
    paths: tuple[tuple[int, ...], ...]  # p_0 .. p_k; p_0 and p_k may be a single vertex


def _is_lozenge_block(edges: frozenset[Edge]) -> tuple[int, int] | None:
    """Return the two apexes when the block is a lozenge (4 vertices, 5 edges)."""
    verts = {x for e in edges for x in e}
    if len(verts) != 4 or len(edges) != 5:
        return None
    deg = {v: 0 for v in verts}
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    apexes = sorted(v for v in verts if deg[v] == 2)
    if len(apexes) != 2 or norm_edge(*apexes) in edges:
        return None
    return apexes[0], apexes[1]


def lozenge_string(g: Graph) -> LozengeString | None:
    """Decompose g as a string of lozenges, or return None.

    A simple path is the case of zero lozenges and a single lozenge counts
    with trivial end paths. Structural test: g is connected, every block is a
    bridge or a lozenge, the blocks form a path, each lozenge meets its
    neighbours only at its apexes, and g has exactly two removable vertices.
    """
    if g.vertex_count == 0 or not is_connected(g):
        return None
    t = build_g_tree(g)
    kinds = []
    for c in t.classes:
        if len(c) == 1:
            kinds.append(None)
            continue
        apexes = _is_lozenge_block(c)
        if apexes is None:
            return None
        kinds.append(apexes)
    if not any(kinds):
        return _bare_path(g)
    cuts = t.cut_vertices()
    if any(len(t.classes_of(v)) != 2 for v in cuts):
        return None
    for ci, apexes in enumerate(kinds):
        cs = [v for v in t.class_vertices(ci) if v in set(cuts)]
        if len(cs) > 2:
            return None
        if apexes is not None and not set(cs) <= set(apexes):
            return None
    if len(removable_vertices(g)) != 2:
        return None
    # walk the block path from an end block
    nclass = len(t.classes)
    if nclass == 1:
        order = [0]
    else:
        ends = [ci for ci in range(nclass) if sum(v in cuts for v in t.class_vertices(ci)) == 1]
        if len(ends) != 2:
            return None
        order = [min(ends)]
        prev_cut = None
        while len(order) < nclass:
            cur = order[-1]
            nxt_cut = [v for v in t.class_vertices(cur) if v in cuts and v != prev_cut]
            if len(nxt_cut) != 1:
                return None
            prev_cut = nxt_cut[0]
            order.append(next(c for c in t.classes_of(prev_cut) if c != cur))
    lozenges = []
    paths: list[list[int]] = [[]]
    prev_cut = None
    for pos, ci in enumerate(order):
        verts = t.class_vertices(ci)
        nxt = None
        if pos + 1 < len(order):
            nxt = next(v for v in verts if v in t.class_vertices(order[pos + 1]))
        apexes = kinds[ci]
        if apexes is None:
            (u, v), = t.classes[ci]
            start = prev_cut if prev_cut is not None else (v if u == nxt else u)
            other = v if start == u else u
            if not paths[-1]:
                paths[-1].append(start)
            paths[-1].append(other)
        else:
            entry = prev_cut if prev_cut is not None else (apexes[1] if apexes[0] == nxt else apexes[0])
            if not paths[-1]:
                paths[-1].append(entry)
            lozenges.append(verts)
            exit_ = nxt if nxt is not None else (apexes[1] if apexes[0] == entry else apexes[0])
            paths.append([exit_])
        prev_cut = nxt
    return LozengeString(tuple(lozenges), tuple(tuple(p) for p in paths))


def _bare_path(g: Graph) -> LozengeString | None:
    if g.edge_count != g.vertex_count - 1 or any(len(a) > 2 for a in g.adj):
        return None
    start = min((v for v in g.vertices() if len(g.adj[v]) <= 1), default=0)
    order = [start]
    while len(order) < g.vertex_count:
        order.append(next(w for w in g.adj[order[-1]] if w not in order[-2:]))
    return LozengeString((), (tuple(order),))


def is_string_of_lozenges(g: Graph) -> bool:
    return lozenge_string(g) is not None


def is_string_of_lozenges_over(a: Iterable[int], b: Graph) -> bool:
    """Whether the induced graph on the vertices of b outside a is a string of lozenges."""
    a = set(a)
    rest, _ = induced_subgraph(b, (v for v in b.vertices() if v not in a))
    return is_string_of_lozenges(rest)
