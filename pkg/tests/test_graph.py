from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from fareylab.errors import CapError, GraphError
from fareylab.farey import build_level
from fareylab.graph import (
    Graph,
    bfs_distances,
    canonical_form,
    find_isomorphism,
    geodesics,
    graph_from_json,
    graph_to_json,
    induced_embeddings,
    induced_subgraph,
    simple_cycles_through_edge,
    to_dot,
    triangles_on_edge,
)

from oracles import brute_canonical, brute_geodesics, to_nx


@st.composite
def small_graphs(draw, max_n: int = 7):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


def relabel(g: Graph, perm: list[int]) -> Graph:
    return Graph(g.vertex_count, [(perm[u], perm[v]) for u, v in g.edges])


class TestConstruction:
    def test_edges_are_normalised_and_deduplicated(self):
        g = Graph(3, [(1, 0), (0, 1), (2, 1)])
        assert g.edges == ((0, 1), (1, 2))
        assert g.edge_count == 2

    @pytest.mark.parametrize(
        "edges", [[(0, 0)], [(0, 5)], [(-1, 0)], [(0, 1, 2)], [("a", 1)]]
    )
    def test_bad_edges_rejected(self, edges):
        with pytest.raises(GraphError):
            Graph(3, edges)

    def test_equality_and_hash(self):
        a = Graph(3, [(0, 1)])
        b = Graph(3, [(1, 0)])
        assert a == b and hash(a) == hash(b)
        assert a != Graph(4, [(0, 1)])

    def test_json_round_trip(self, levels):
        g = levels[3].graph
        assert graph_from_json(graph_to_json(g)) == g

    def test_dot_mentions_every_edge(self, lozenge):
        dot = to_dot(lozenge)
        assert dot.startswith("graph") and dot.count("--") == 5


class TestGeodesics:
    def test_lozenge_apexes(self, lozenge):
        assert geodesics(lozenge, 2, 3) == [(2, 0, 3), (2, 1, 3)]

    def test_same_vertex_and_disconnected(self):
        g = Graph(3, [(0, 1)])
        assert geodesics(g, 0, 0) == [(0,)]
        assert geodesics(g, 0, 2) == []

    def test_matches_simple_path_enumeration_on_f3(self, levels):
        g = levels[3].graph
        for x, y in itertools.combinations(g.vertices(), 2):
            assert geodesics(g, x, y) == brute_geodesics(g, x, y)

    @given(small_graphs())
    @settings(max_examples=60, deadline=None)
    def test_agrees_with_networkx(self, g):
        h = to_nx(g)
        for x, y in itertools.permutations(g.vertices(), 2):
            ours = geodesics(g, x, y)
            if nx.has_path(h, x, y):
                assert sorted(map(tuple, nx.all_shortest_paths(h, x, y))) == ours
            else:
                assert ours == []

    def test_distances(self, levels):
        d = bfs_distances(levels[2].graph, 4)
        assert d[4] == 0 and d[0] == 1 and d[2] == 1 and d[1] == 2


class TestTrianglesAndCycles:
    def test_triangles_on_core_edge(self, levels):
        assert triangles_on_edge(levels[2].graph, (0, 1)) == {2, 3}

    def test_non_edge_rejected(self, lozenge):
        with pytest.raises(GraphError):
            triangles_on_edge(lozenge, (2, 3))

    def test_f1_cycles_through_core_edge(self, levels):
        cycles = simple_cycles_through_edge(levels[1].graph, (0, 1), 4)
        assert len(cycles) == 3

    def test_cycles_are_simple_and_contain_the_edge(self, levels):
        g = levels[2].graph
        for cyc in simple_cycles_through_edge(g, (0, 2), 6):
            assert len(set(cyc)) == len(cyc) >= 3
            assert 0 in cyc and 2 in cyc
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                assert g.has_edge(a, b)


class TestCanonicalForm:
    @given(small_graphs(6), st.randoms(use_true_random=False))
    @settings(max_examples=80, deadline=None)
    def test_invariant_under_relabelling(self, g, rnd):
        perm = list(range(g.vertex_count))
        rnd.shuffle(perm)
        assert canonical_form(g).code == canonical_form(relabel(g, perm)).code

    @given(small_graphs(6), small_graphs(6))
    @settings(max_examples=80, deadline=None)
    def test_equal_codes_iff_isomorphic(self, g, h):
        same = g.vertex_count == h.vertex_count and brute_canonical(g) == brute_canonical(h)
        assert (canonical_form(g).code == canonical_form(h).code) == same

    def test_pins_distinguish_orientation(self, levels):
        g = levels[1].graph
        # 2 and 3 are interchangeable, 0 and 2 are not
        assert canonical_form(g, (2,)).code == canonical_form(g, (3,)).code
        assert canonical_form(g, (0,)).code != canonical_form(g, (2,)).code

    def test_cap(self, levels):
        with pytest.raises(CapError):
            canonical_form(levels[4].graph, cap=16)


class TestEmbeddings:
    def test_pinned_lozenge_in_f2(self, levels, lozenge):
        maps = list(induced_embeddings(lozenge, levels[2].graph, {2: 4, 3: 1}))
        assert maps and all(set(m.values()) == {0, 1, 2, 4} for m in maps)

    def test_induced_not_just_subgraph(self, lozenge, c4):
        # the lozenge contains a 4-cycle but not an induced one
        assert not list(induced_embeddings(c4, lozenge))

    @given(small_graphs(6), st.randoms(use_true_random=False))
    @settings(max_examples=60, deadline=None)
    def test_isomorphism_found_for_relabelling(self, g, rnd):
        perm = list(range(g.vertex_count))
        rnd.shuffle(perm)
        h = relabel(g, perm)
        iso = find_isomorphism(g, h)
        assert iso is not None
        for u, v in itertools.combinations(g.vertices(), 2):
            assert g.has_edge(u, v) == h.has_edge(iso[u], iso[v])

    def test_embedding_count_matches_brute_force(self, levels, lozenge):
        host = levels[2].graph
        ours = sum(1 for _ in induced_embeddings(lozenge, host))
        brute = 0
        for img in itertools.permutations(host.vertices(), 4):
            if all(
                lozenge.has_edge(a, b) == host.has_edge(img[a], img[b])
                for a, b in itertools.combinations(range(4), 2)
            ):
                brute += 1
        assert ours == brute

    def test_induced_subgraph_map(self, levels):
        sub, index = induced_subgraph(levels[2].graph, [0, 1, 4])
        assert sub.edges == ((0, 1), (0, 2)) and index == {0: 0, 1: 1, 4: 2}
