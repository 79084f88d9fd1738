from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings

from fareylab.decomp import (
    IN_HULL,
    acl,
    build_g_tree,
    conv_m,
    edge_equivalence_classes,
    free_amalgam_over,
    gate,
    is_forest,
    is_independent,
    separates,
)
from fareylab.errors import GraphError
from fareylab.graph import Graph, geodesics
from fareylab.models import ModelSpec, TreeEdge, build_tree_model

from oracles import nx_blocks
from test_graph import small_graphs


@given(small_graphs(8))
@settings(max_examples=150, deadline=None)
def test_classes_match_networkx_blocks(g):
    assert set(edge_equivalence_classes(g)) == nx_blocks(g)


@given(small_graphs(8))
@settings(max_examples=100, deadline=None)
def test_incidence_graph_is_a_forest(g):
    assert is_forest(build_g_tree(g))


def test_farey_level_is_one_block(levels):
    assert len(edge_equivalence_classes(levels[3].graph)) == 1


def test_chain_blocks(chain):
    t = build_g_tree(chain)
    assert len(t.classes) == 2 and t.cut_vertices() == [3]


def test_acl_of_free_apexes_is_whole_chain(chain):
    assert acl(chain, {2, 6}) == frozenset(range(7))
    assert acl(chain, {2}) == {2}


def test_acl_in_single_block(levels):
    assert acl(levels[2].graph, {0, 5}) == frozenset(range(8))


def test_gate_in_chain(chain):
    assert gate(chain, 6, {0, 1}) == 3
    assert gate(chain, 0, {0, 1}) == IN_HULL


def test_gate_errors(chain):
    g = Graph(3, [(0, 1)])
    with pytest.raises(GraphError):
        gate(g, 2, {0})
    with pytest.raises(GraphError):
        gate(chain, 2, set())


def test_separation_and_independence(chain):
    assert separates(chain, {3}, {0}, {4})
    assert not separates(chain, {0}, {1}, {4})
    assert is_independent(chain, {0}, {3}, {6})
    assert not is_independent(chain, {0}, {1}, {6})


def test_free_amalgam_over_cut(chain):
    assert free_amalgam_over(chain, {3}, {0}, {6})
    assert not free_amalgam_over(chain, {0}, {1}, {6})


def test_conv_m_classes(chain):
    hull = conv_m(chain, {2, 6})
    assert hull.class_nodes == {0, 1} and 3 in hull.vertex_nodes


def _random_tree_model(rng: random.Random, max_nodes: int = 4, max_level: int = 2):
    k = rng.randint(1, max_nodes)
    nodes = tuple((i, rng.randint(1, max_level)) for i in range(k))
    edges = []
    for i in range(1, k):
        j = rng.randrange(i)
        edges.append(TreeEdge(j, i, rng.randrange(2 ** (nodes[j][1] + 1)), rng.randrange(2 ** (nodes[i][1] + 1))))
    return build_tree_model(ModelSpec(nodes, tuple(edges)))


def test_gate_lies_on_every_geodesic_into_hull():
    rng = random.Random(7)
    for _ in range(10):
        g = _random_tree_model(rng).graph
        for b in itertools.combinations(g.vertices(), 1):
            hull = acl(g, b)
            for x in g.vertices():
                if x in hull:
                    continue
                z = gate(g, x, b)
                for t in hull:
                    for path in geodesics(g, x, t):
                        assert z in path
