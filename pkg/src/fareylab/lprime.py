"""Expanded-language predicates over graphs in K.

Minimal triangulated cycles are triangulated polygons with exactly two ears;
their dual tree is a path, so every such polygon is a strip of triangles
fixed by its sequence of left/right turns. The catalog is grown from one ear
triangle of a Farey level and checked for saturation one level higher.

Predicates:

* ``P_C(x, y)``: an induced copy of the cycle type ``C`` whose ears are x, y.
* ``P_delta(x, y)``: a chain of ``P_C`` links whose spans add up to d(x, y).
  Every connecting point then lies at the matching depth of the geodesic
  layers between x and y, which makes the search a layered DP.
* ``D_n(x, y, z)``: a pinned induced copy of F_n with x, y, z at its core
  triangle. The permutation parameter is existential over the remaining
  vertices, so it never changes the truth value and is not enumerated.
* ``Y_eps(x, y, z)``: D-witnesses reached from x, y, z by three chains.
"""
from __future__ import annotations

import itertools
import json
import os
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import CapError, FareyError
from .farey import build_level
from .graph import (
    Edge,
    Graph,
    bfs_distances,
    canonical_form,
    induced_embeddings,
    norm_edge,
)
from .kclass import is_in_K, removable_vertices

CATALOG_CAP = 12
LOZENGE = "lozenge"


# --- cycle types -----------------------------------------------------------------


def _decode_code(code: bytes) -> Graph:
    n = code[0]
    bits = iter(code[2:])
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if next(bits)]
    return Graph(n, edges)


@dataclass(frozen=True)
class CycleType:
    """A minimal triangulated cycle, relabelled canonically with its ears at 0 and 1."""

    name: str
    graph: Graph
    span: int
    code: bytes

    @property
    def removable_pair(self) -> tuple[int, int]:
        return (0, 1)

    @property
    def size(self) -> int:
        return self.graph.vertex_count

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "span": self.span,
            "code": self.code.hex(),
            "adjacency": [sorted(s) for s in self.graph.adj],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "CycleType":
        g = Graph.from_adjacency(data["adjacency"])
        return cls(data["name"], g, int(data["span"]), bytes.fromhex(data["code"]))


def cycle_type_code(g: Graph, x: int, y: int) -> bytes:
    """Canonical code of g with the unordered pair {x, y} pinned."""
    return min(canonical_form(g, (x, y)).code, canonical_form(g, (y, x)).code)


def is_minimal_cycle(g: Graph) -> tuple[int, int] | None:
    """The two ears when g is a triangulated cycle with exactly two removable vertices."""
    n = g.vertex_count
    if n < 4 or g.edge_count != 2 * n - 3 or not is_in_K(g).member:
        return None
    rem = sorted(removable_vertices(g))
    if len(rem) != 2:
        return None
    if any(len(g.adj[v]) < 2 for v in g.vertices()):
        return None
    return rem[0], rem[1]


@dataclass(frozen=True)
class CycleCatalog:
    types: tuple[CycleType, ...]
    max_vertices: int
    level: int
    _by_name: dict[str, CycleType] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        by_name = {t.name: t for t in self.types}
        lozenges = [t for t in self.types if t.size == 4]
        if lozenges:
            by_name[LOZENGE] = lozenges[0]
        object.__setattr__(self, "_by_name", by_name)

    def __iter__(self) -> Iterator[CycleType]:
        return iter(self.types)

    def __len__(self) -> int:
        return len(self.types)

    def get(self, name: str) -> CycleType:
        try:
            return self._by_name[name]
        except KeyError:
            raise FareyError(f"unknown cycle type {name!r}") from None

    def by_span(self) -> dict[int, list[CycleType]]:
        out: dict[int, list[CycleType]] = {}
        for t in self.types:
            out.setdefault(t.span, []).append(t)
        return out

    def bounded(self, max_size: int) -> tuple[CycleType, ...]:
        return tuple(t for t in self.types if t.size <= max_size)

    def codes(self) -> frozenset[bytes]:
        return frozenset(t.code for t in self.types)

    def to_dict(self) -> dict:
        return {
            "max_vertices": self.max_vertices,
            "level": self.level,
            "types": [t.to_dict() for t in self.types],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "CycleCatalog":
        return cls(
            tuple(CycleType.from_dict(t) for t in data["types"]),
            int(data["max_vertices"]),
            int(data["level"]),
        )

    def save(self, path: str | os.PathLike) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=1))

    @classmethod
    def load(cls, path: str | os.PathLike) -> "CycleCatalog":
        return cls.from_dict(json.loads(Path(path).read_text()))


def _grow_strips(g: Graph, ear: int, p: int, q: int, max_vertices: int) -> Iterator[list[int]]:
    """Vertex lists of strips in g starting with ear triangle (ear, p, q).

    Each step adds the other apex of one of the two newest boundary edges;
    the new apex must see no polygon vertex besides that edge's endpoints.
    """

    def other_apex(a: int, b: int, not_this: int) -> int | None:
        rest = (g.adj[a] & g.adj[b]) - {not_this}
        return next(iter(rest)) if len(rest) == 1 else None

    def rec(verts: list[int], inside: set[int], a: int, b: int, prev: int) -> Iterator[list[int]]:
        c = other_apex(a, b, prev)
        if c is None or c in inside or g.adj[c] & inside != {a, b}:
            return
        verts.append(c)
        inside.add(c)
        yield list(verts)
        if len(verts) < max_vertices:
            yield from rec(verts, inside, a, c, b)
            yield from rec(verts, inside, b, c, a)
        verts.pop()
        inside.discard(c)

    yield from rec([ear, p, q], {ear, p, q}, p, q, ear)


def _strip_codes(g: Graph, max_vertices: int, seeds: Iterable[tuple[int, int, int]]) -> dict[bytes, Graph]:
    found: dict[bytes, Graph] = {}
    for ear, p, q in seeds:
        for verts in _grow_strips(g, ear, p, q, max_vertices):
            sub_adj = [[verts.index(w) for w in g.adj[v] if w in verts] for v in verts]
            strip = Graph.from_adjacency(sub_adj)
            pair = is_minimal_cycle(strip)
            if pair is None:  # pragma: no cover - growth only yields strips
                continue
            code = cycle_type_code(strip, *pair)
            found.setdefault(code, _decode_code(code))
    return found


def strip_codes_exhaustive(g: Graph, max_vertices: int) -> frozenset[bytes]:
    """Codes of all minimal cycles in g with at most ``max_vertices`` vertices, from every ear."""
    seeds = []
    for u, v in g.edges:
        for w in g.adj[u] & g.adj[v]:
            seeds.append((w, u, v))
    return frozenset(_strip_codes(g, max_vertices, seeds))


def _build_catalog(max_vertices: int, level: int) -> tuple[CycleType, ...]:
    g = build_level(level).graph
    # ear 3 over the core edge: every turn sequence is available from here
    found = _strip_codes(g, max_vertices, [(3, 0, 1)])
    rows = []
    for code, h in found.items():
        dist = bfs_distances(h, 0)[1]
        rows.append((dist, h.vertex_count, code, h))
    rows.sort()
    types = []
    counters: dict[int, int] = {}
    for span, _, code, h in rows:
        i = counters.get(span, 0)
        counters[span] = i + 1
        types.append(CycleType(f"C{span}.{i}", h, span, code))
    return tuple(types)


@lru_cache(maxsize=16)
def enumerate_cycle_types(max_vertices: int = 8, level: int | None = None) -> CycleCatalog:
    """All minimal triangulated cycle types with at most ``max_vertices`` vertices.

    Grown inside F_level (default: just deep enough for the size bound) and
    checked to be unchanged one level higher.
    """
    if max_vertices > CATALOG_CAP:
        raise CapError(f"cycle catalog limited to {CATALOG_CAP} vertices")
    if max_vertices < 4:
        return CycleCatalog((), max_vertices, level or 1)
    level = level or max_vertices - 2
    types = _build_catalog(max_vertices, level)
    again = _build_catalog(max_vertices, level + 1)
    if {t.code for t in types} != {t.code for t in again}:
        raise FareyError(f"cycle catalog not saturated at level {level}")
    for t in types:
        if is_minimal_cycle(t.graph) != (0, 1):
            raise FareyError(f"catalog entry {t.name} is not a minimal cycle")
    return CycleCatalog(types, max_vertices, level)


def load_catalog(max_vertices: int = 8, path: str | os.PathLike | None = None) -> CycleCatalog:
    """Catalog from ``path`` (or $FAREY_LAB_CACHE) when it covers the bound, else computed."""
    path = path or os.environ.get("FAREY_LAB_CACHE")
    if path and Path(path).exists():
        cat = CycleCatalog.load(path)
        if cat.max_vertices >= max_vertices:
            return cat
    cat = enumerate_cycle_types(max_vertices)
    if path:
        try:
            cat.save(path)
        except OSError:
            pass
    return cat


# --- sequences and descriptors --------------------------------------------------


@dataclass(frozen=True)
class DeltaSequence:
    items: tuple[CycleType, ...] = ()

    @property
    def total_span(self) -> int:
        return sum(c.span for c in self.items)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.items)

    def __len__(self) -> int:
        return len(self.items)

    def reversed(self) -> "DeltaSequence":
        return DeltaSequence(self.items[::-1])

    @classmethod
    def parse(cls, text: str, catalog: CycleCatalog) -> "DeltaSequence":
        names = [s.strip() for s in text.split(",") if s.strip()]
        return cls(tuple(catalog.get(n) for n in names))


@dataclass(frozen=True)
class PDeltaWitness:
    connecting_points: tuple[int, ...]
    copies: tuple[frozenset[int], ...]

    def to_dict(self) -> dict:
        return {
            "connecting_points": list(self.connecting_points),
            "copies": [sorted(c) for c in self.copies],
        }


@dataclass(frozen=True)
class DPredicate:
    level: int
    pins: tuple[int, int, int]
    extension: dict[int, int]  # host vertex -> F_level vertex, for the non-pinned vertices

    def full_map(self) -> dict[int, int]:
        out = {p: i for i, p in enumerate(self.pins)}
        out.update(self.extension)
        return out


@dataclass(frozen=True)
class EpsilonDescriptor:
    d1: DeltaSequence
    d2: DeltaSequence
    d3: DeltaSequence
    level: int

    @property
    def total_length(self) -> int:
        return len(self.d1) + len(self.d2) + len(self.d3)


@dataclass(frozen=True)
class YWitness:
    points: tuple[int, int, int]
    d_map: DPredicate


# --- evaluation -------------------------------------------------------------------


class Predicates:
    """Cached evaluator for one graph."""

    def __init__(self, g: Graph, catalog: CycleCatalog | None = None):
        self.g = g
        self.catalog = catalog
        self._dist: dict[int, list[int | None]] = {}
        self._partners: dict[tuple[bytes, int], dict[int, frozenset[int]]] = {}
        self._d_cache: dict[tuple[int, int, int, int], list[DPredicate]] = {}
        self._levels: dict[int, Graph] = {}

    def dist(self, x: int) -> list[int | None]:
        d = self._dist.get(x)
        if d is None:
            d = self._dist[x] = bfs_distances(self.g, x)
        return d

    def partners(self, c: CycleType, x: int) -> dict[int, frozenset[int]]:
        """Every y with P_C(x, y), with one witness copy each."""
        key = (c.code, x)
        hit = self._partners.get(key)
        if hit is not None:
            return hit
        self.g._check_vertex(x)
        out: dict[int, frozenset[int]] = {}
        for here, there in ((0, 1), (1, 0)):
            for emb in induced_embeddings(c.graph, self.g, {here: x}):
                y = emb[there]
                if y not in out:
                    out[y] = frozenset(emb.values())
        self._partners[key] = out
        return out

    def p_c(self, c: CycleType, x: int, y: int) -> tuple[bool, frozenset[int] | None]:
        if x == y:
            return False, None
        self.g._check_vertex(y)
        for here, there in ((0, 1), (1, 0)):
            emb = next(induced_embeddings(c.graph, self.g, {here: x, there: y}), None)
            if emb is not None:
                return True, frozenset(emb.values())
        return False, None

    def _layers(
        self, d: DeltaSequence, x: int, y: int | None
    ) -> list[dict[int, list[tuple[int, frozenset[int]]]]]:
        """Layered DP. Layer i maps each candidate z_i to its (z_{i-1}, copy) predecessors."""
        dx = self.dist(x)
        dy = self.dist(y) if y is not None else None
        total = d.total_span
        layers: list[dict[int, list[tuple[int, frozenset[int]]]]] = [{x: []}]
        partial = 0
        for c in d.items:
            partial += c.span
            nxt: dict[int, list[tuple[int, frozenset[int]]]] = {}
            for w in layers[-1]:
                for z, copy in self.partners(c, w).items():
                    if dx[z] != partial:
                        continue
                    if dy is not None and dy[z] != total - partial:
                        continue
                    nxt.setdefault(z, []).append((w, copy))
            layers.append(nxt)
            if not nxt:
                break
        return layers

    def p_delta(self, d: DeltaSequence, x: int, y: int) -> tuple[bool, PDeltaWitness | None]:
        self.g._check_vertex(x)
        self.g._check_vertex(y)
        if not d.items:
            return (x == y), (PDeltaWitness((x,), ()) if x == y else None)
        if self.dist(x)[y] != d.total_span:
            return False, None
        layers = self._layers(d, x, y)
        if len(layers) != len(d.items) + 1 or y not in layers[-1]:
            return False, None
        points = [y]
        copies = []
        for i in range(len(d.items), 0, -1):
            prev, copy = layers[i][points[-1]][0]
            points.append(prev)
            copies.append(copy)
        return True, PDeltaWitness(tuple(points[::-1]), tuple(copies[::-1]))

    def p_delta_witnesses(self, d: DeltaSequence, x: int, y: int) -> list[PDeltaWitness]:
        """All connecting-point sequences for P_delta(x, y) (one copy per link)."""
        if not d.items:
            return [PDeltaWitness((x,), ())] if x == y else []
        if self.dist(x)[y] != d.total_span:
            return []
        layers = self._layers(d, x, y)
        if len(layers) != len(d.items) + 1 or y not in layers[-1]:
            return []
        out: list[PDeltaWitness] = []

        def back(i: int, pts: list[int], cps: list[frozenset[int]]) -> None:
            if i == 0:
                out.append(PDeltaWitness(tuple(pts[::-1]), tuple(cps[::-1])))
                return
            seen = set()
            for prev, copy in layers[i][pts[-1]]:
                if prev in seen:
                    continue
                seen.add(prev)
                back(i - 1, pts + [prev], cps + [copy])

        back(len(d.items), [y], [])
        out.sort(key=lambda w: w.connecting_points)
        return out

    def p_delta_targets(self, d: DeltaSequence, x: int) -> frozenset[int]:
        """Every y with P_delta(x, y)."""
        if not d.items:
            return frozenset([x])
        layers = self._layers(d, x, None)
        if len(layers) != len(d.items) + 1:
            return frozenset()
        return frozenset(layers[-1])

    def level_graph(self, n: int) -> Graph:
        h = self._levels.get(n)
        if h is None:
            h = self._levels[n] = build_level(n).graph
        return h

    def d_maps(self, level: int, x: int, y: int, z: int) -> list[DPredicate]:
        key = (level, x, y, z)
        hit = self._d_cache.get(key)
        if hit is not None:
            return hit
        out: list[DPredicate] = []
        if len({x, y, z}) == 3:
            f = self.level_graph(level)
            for emb in induced_embeddings(f, self.g, {0: x, 1: y, 2: z}):
                ext = {h: p for p, h in emb.items() if p > 2}
                out.append(DPredicate(level, (x, y, z), dict(sorted(ext.items()))))
        out.sort(key=lambda m: sorted(m.extension.items()))
        self._d_cache[key] = out
        return out

    def d_holds(self, level: int, x: int, y: int, z: int) -> bool:
        key = (level, x, y, z)
        if key in self._d_cache:
            return bool(self._d_cache[key])
        if len({x, y, z}) != 3:
            return False
        f = self.level_graph(level)
        return next(induced_embeddings(f, self.g, {0: x, 1: y, 2: z}), None) is not None

    def y(self, e: EpsilonDescriptor, x: int, y: int, z: int) -> tuple[bool, YWitness | None]:
        xs = self.p_delta_targets(e.d1, x)
        ys = self.p_delta_targets(e.d2, y)
        zs = self.p_delta_targets(e.d3, z)
        adj = self.g.adj
        for xp in sorted(xs):
            for yp in sorted(ys & adj[xp]):
                for zp in sorted(zs & adj[xp] & adj[yp]):
                    maps = self.d_maps(e.level, xp, yp, zp)
                    if maps:
                        return True, YWitness((xp, yp, zp), maps[0])
        return False, None

    def reach(self, x: int, types: Sequence[CycleType], max_len: int) -> dict[int, set[tuple[str, ...]]]:
        """For every z, the sequences delta (length <= max_len) with P_delta(x, z)."""
        dx = self.dist(x)
        far = max((d for d in dx if d is not None), default=0)
        out: dict[int, set[tuple[str, ...]]] = {x: {()}}
        stack: list[tuple[tuple[str, ...], int, frozenset[int]]] = [((), 0, frozenset([x]))]
        while stack:
            prefix, partial, frontier = stack.pop()
            if len(prefix) >= max_len:
                continue
            for c in types:
                depth = partial + c.span
                if depth > far:
                    continue
                nxt = set()
                for w in frontier:
                    for z in self.partners(c, w):
                        if dx[z] == depth:
                            nxt.add(z)
                if not nxt:
                    continue
                seq = prefix + (c.name,)
                for z in nxt:
                    out.setdefault(z, set()).add(seq)
                stack.append((seq, depth, frozenset(nxt)))
        return out


@lru_cache(maxsize=32)
def evaluator(g: Graph) -> Predicates:
    return Predicates(g)


def eval_P_C(g: Graph, c: CycleType, x: int, y: int) -> tuple[bool, frozenset[int] | None]:
    if x == y:
        raise FareyError("P_C needs two distinct vertices")
    return evaluator(g).p_c(c, x, y)


def eval_P_delta(g: Graph, d: DeltaSequence, x: int, y: int) -> tuple[bool, PDeltaWitness | None]:
    return evaluator(g).p_delta(d, x, y)


def pdelta_witnesses(g: Graph, d: DeltaSequence, x: int, y: int) -> list[PDeltaWitness]:
    return evaluator(g).p_delta_witnesses(d, x, y)


def eval_D(g: Graph, level: int, x: int, y: int, z: int) -> list[DPredicate]:
    """Pinned induced copies of F_level with x, y, z at its vertices 0, 1, 2."""
    for v in (x, y, z):
        g._check_vertex(v)
    return evaluator(g).d_maps(level, x, y, z)


def eval_Y(g: Graph, e: EpsilonDescriptor, x: int, y: int, z: int) -> tuple[bool, YWitness | None]:
    for v in (x, y, z):
        g._check_vertex(v)
    return evaluator(g).y(e, x, y, z)


def count_solutions(g: Graph, atoms: Sequence[tuple[DeltaSequence, int]]) -> int:
    """Number of x with P_delta(x, a) for every (delta, a) in ``atoms``."""
    return len(solutions(g, atoms))


def solutions(g: Graph, atoms: Sequence[tuple[DeltaSequence, int]]) -> frozenset[int]:
    ev = evaluator(g)
    if not atoms:
        return frozenset(g.vertices())
    out: frozenset[int] | None = None
    for d, a in atoms:
        # P_delta(x, a) iff P_reversed(a, x)
        s = ev.p_delta_targets(d.reversed(), a)
        out = s if out is None else out & s
        if not out:
            break
    return out or frozenset()


# --- fingerprints -------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class FingerprintBounds:
    max_cycle_size: int = 8
    max_delta_len: int = 4
    max_eps_len: int = 4
    max_level: int = 2

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.max_cycle_size, self.max_delta_len, self.max_eps_len, self.max_level)


EpsAtom = tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...], int]


@dataclass(frozen=True)
class QfFingerprint:
    over: tuple[int, ...]
    bounds: FingerprintBounds
    atomic: tuple[str, ...]  # per a in A: "eq", "adj" or "non"
    delta: tuple[frozenset[tuple[str, ...]], ...]  # per a in A
    eps: tuple[tuple[tuple[int, int], frozenset[EpsAtom]], ...]  # per ordered pair (i, j), i != j

    def key(self) -> tuple:
        return (self.atomic, self.delta, self.eps)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QfFingerprint) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def restrict(self, bounds: FingerprintBounds, catalog: CycleCatalog) -> "QfFingerprint":
        size = {t.name: t.size for t in catalog}

        def seq_ok(seq: tuple[str, ...]) -> bool:
            return all(size[n] <= bounds.max_cycle_size for n in seq)

        delta = tuple(
            frozenset(s for s in ds if len(s) <= bounds.max_delta_len and seq_ok(s)) for ds in self.delta
        )
        eps = tuple(
            (
                pair,
                frozenset(
                    e
                    for e in es
                    if e[3] <= bounds.max_level
                    and len(e[0]) + len(e[1]) + len(e[2]) <= bounds.max_eps_len
                    and seq_ok(e[0] + e[1] + e[2])
                ),
            )
            for pair, es in self.eps
        )
        return QfFingerprint(self.over, bounds, self.atomic, delta, eps)

    def to_dict(self) -> dict:
        return {
            "over": list(self.over),
            "bounds": list(self.bounds.as_tuple()),
            "atomic": list(self.atomic),
            "delta": [sorted(list(s) for s in ds) for ds in self.delta],
            "eps": [
                {"pair": list(pair), "atoms": sorted([list(e[0]), list(e[1]), list(e[2]), e[3]] for e in es)}
                for pair, es in self.eps
            ],
        }


class FingerprintContext:
    """Shared work for many fingerprints over the same graph and parameters."""

    def __init__(self, g: Graph, a: Sequence[int], bounds: FingerprintBounds, catalog: CycleCatalog | None = None):
        if bounds.max_cycle_size > CATALOG_CAP:
            raise CapError(f"cycle size bound limited to {CATALOG_CAP}")
        self.g = g
        self.a = tuple(a)
        self.bounds = bounds
        self.catalog = catalog or enumerate_cycle_types(max(4, bounds.max_cycle_size))
        self.types = self.catalog.bounded(bounds.max_cycle_size)
        self.ev = evaluator(g)
        reach_len = max(bounds.max_delta_len, bounds.max_eps_len)
        self._reach_len = reach_len
        self.reach_a = [self.ev.reach(v, self.types, reach_len) for v in self.a]
        self.d_triangles: dict[int, list[tuple[int, int, int]]] = {}
        for n in range(1, bounds.max_level + 1):
            tris = []
            for u, v in g.edges:
                for w in sorted(g.adj[u] & g.adj[v]):
                    for t in itertools.permutations((u, v, w)):
                        if self.ev.d_holds(n, *t):
                            tris.append(t)
            self.d_triangles[n] = sorted(set(tris))

    def fingerprint(self, b: int) -> QfFingerprint:
        g, a, bounds = self.g, self.a, self.bounds
        g._check_vertex(b)
        atomic = tuple("eq" if b == x else "adj" if g.has_edge(b, x) else "non" for x in a)
        rb = self.ev.reach(b, self.types, self._reach_len)
        delta = tuple(
            frozenset(s for s in rb.get(x, ()) if len(s) <= bounds.max_delta_len) for x in a
        )
        eps = []
        for i, j in itertools.permutations(range(len(a)), 2):
            ri, rj = self.reach_a[i], self.reach_a[j]
            atoms: set[EpsAtom] = set()
            for n, tris in self.d_triangles.items():
                for xp, yp, zp in tris:
                    s1, s2, s3 = ri.get(xp), rj.get(yp), rb.get(zp)
                    if not (s1 and s2 and s3):
                        continue
                    for d1 in s1:
                        for d2 in s2:
                            if len(d1) + len(d2) > bounds.max_eps_len:
                                continue
                            for d3 in s3:
                                if len(d1) + len(d2) + len(d3) <= bounds.max_eps_len:
                                    atoms.add((d1, d2, d3, n))
            eps.append(((i, j), frozenset(atoms)))
        return QfFingerprint(a, bounds, atomic, delta, tuple(eps))


def qf_fingerprint(
    g: Graph, a: Sequence[int], b: int, bounds: FingerprintBounds | None = None
) -> QfFingerprint:
    return FingerprintContext(g, a, bounds or FingerprintBounds()).fingerprint(b)


def separating_bounds(
    g: Graph, a: Sequence[int], targets: Sequence[int], start: FingerprintBounds | None = None
) -> FingerprintBounds | None:
    """Coordinate-wise minimal bounds under which the targets get distinct fingerprints.

    Computes fingerprints once at ``start`` and shrinks each coordinate in turn
    by restriction. Returns None when even ``start`` does not separate.
    """
    start = start or FingerprintBounds()
    ctx = FingerprintContext(g, a, start)
    full = [ctx.fingerprint(b) for b in targets]

    def separates(bounds: FingerprintBounds) -> bool:
        return len({f.restrict(bounds, ctx.catalog) for f in full}) == len(full)

    if not separates(start):
        return None
    cur = list(start.as_tuple())
    floors = (4, 0, 0, 1)
    for k in range(4):
        while cur[k] > floors[k]:
            trial = list(cur)
            trial[k] -= 1
            if not separates(FingerprintBounds(*trial)):
                break
            cur = trial
    return FingerprintBounds(*cur)


# --- embeds (bounded) ---------------------------------------------------------------


@dataclass(frozen=True)
class EmbedVerdict:
    verdict: str  # "refuted" or "consistent"
    reason: str
    counterexample: int | None = None
    length_law: bool = True

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "counterexample": self.counterexample,
            "length_law": self.length_law,
        }


def embeds_bounded(
    d_prime: DeltaSequence, d: DeltaSequence, corpus: Sequence[tuple[Graph, tuple[int, int]]]
) -> EmbedVerdict:
    """Test 'P_d implies P_d_prime' on a finite corpus of instances of P_d.

    A consistent verdict is evidence, not a proof.
    """
    for i, (g, (x, y)) in enumerate(corpus):
        if not eval_P_delta(g, d, x, y)[0]:
            raise FareyError(f"corpus instance {i} does not satisfy P_d")
    for i, (g, (x, y)) in enumerate(corpus):
        if not eval_P_delta(g, d_prime, x, y)[0]:
            return EmbedVerdict("refuted", "instance", i, len(d) <= len(d_prime))
    if len(d) > len(d_prime):
        return EmbedVerdict("refuted", "length_law", None, False)
    return EmbedVerdict("consistent", "corpus", None, True)


# --- triangle-rigid propagation -------------------------------------------------------


@dataclass(frozen=True)
class PartialAutomorphism:
    map: dict[int, int]
    frontier: tuple[Edge, ...]

    def is_full(self, g: Graph) -> bool:
        return len(self.map) == g.vertex_count and set(self.map.values()) == set(g.vertices())


def _is_triangle(g: Graph, t: Sequence[int]) -> bool:
    a, b, c = t
    return len({a, b, c}) == 3 and g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)


def extend_triangle_map(
    g: Graph, source: Sequence[int], target: Sequence[int]
) -> PartialAutomorphism | None:
    """Propagate source[i] -> target[i] across shared edges of triangles.

    Each mapped edge sends its remaining apex to the remaining apex of the
    image edge. Returns None on any mismatch in apex counts, a clash with an
    earlier assignment, or a map that fails to preserve edges and non-edges.
    """
    if not (_is_triangle(g, source) and _is_triangle(g, target)):
        raise FareyError("source and target must be triangles")
    adj = g.adj
    m = dict(zip(source, target))
    image = set(m.values())
    queue = deque(norm_edge(u, v) for u, v in itertools.combinations(source, 2))
    done: set[Edge] = set()
    while queue:
        u, v = queue.popleft()
        if (u, v) in done:
            continue
        done.add((u, v))
        mu, mv = m[u], m[v]
        here = adj[u] & adj[v]
        there = adj[mu] & adj[mv]
        if len(here) != len(there):
            return None
        free_here = [w for w in here if w not in m]
        for w in here:
            if w in m and m[w] not in there:
                return None
        free_there = sorted(there - {m[w] for w in here if w in m})
        if len(free_here) != len(free_there) or len(free_here) > 1:
            return None
        for w, w2 in zip(free_here, free_there):
            if w2 in image:
                return None
            m[w] = w2
            image.add(w2)
        for w in here:
            for e in (norm_edge(u, w), norm_edge(v, w)):
                if e not in done:
                    queue.append(e)
    dom = set(m)
    for u in dom:
        if {m[w] for w in adj[u] if w in dom} != adj[m[u]] & image:
            return None
    frontier = tuple(sorted(norm_edge(u, w) for u in dom for w in adj[u] if w not in dom))
    return PartialAutomorphism(dict(sorted(m.items())), frontier)
