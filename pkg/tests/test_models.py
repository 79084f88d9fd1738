from __future__ import annotations

import random

import pytest

from fareylab.decomp import build_g_tree, edge_equivalence_classes
from fareylab.errors import ModelSpecError
from fareylab.farey import build_level
from fareylab.graph import Graph, connected_components, find_isomorphism, induced_subgraph
from fareylab.kclass import is_in_K
from fareylab.models import (
    GenericConfig,
    ModelSpec,
    TreeEdge,
    build_generic,
    build_tree_model,
    t_compliance,
)


def test_single_node_is_farey_level():
    tm = build_tree_model(ModelSpec(((0, 2),)))
    assert tm.graph == build_level(2).graph


def test_two_lozenges_apex_to_apex():
    tm = build_tree_model(ModelSpec(((0, 1), (1, 1)), (TreeEdge(0, 1, 3, 2),)))
    assert (tm.graph.vertex_count, tm.graph.edge_count) == (7, 10)
    rep = t_compliance(tm.graph)
    assert (rep.edges_one_triangle, rep.edges_two_triangles) == (8, 2)


def test_path_of_three():
    spec = ModelSpec(((0, 1), (1, 1), (2, 1)), (TreeEdge(0, 1, 3, 2), TreeEdge(1, 2, 3, 2)))
    t = build_g_tree(build_tree_model(spec).graph)
    assert len(t.classes) == 3 and len(t.cut_vertices()) == 2


def test_spec_errors():
    with pytest.raises(ModelSpecError):
        ModelSpec(((0, 1), (1, 1)), (TreeEdge(0, 1, 0, 0), TreeEdge(1, 0, 1, 1)))
    with pytest.raises(ModelSpecError):
        ModelSpec(((0, 1), (1, 1)), (TreeEdge(0, 1, 4, 0),))
    with pytest.raises(ModelSpecError):
        ModelSpec(((0, 0),))
    with pytest.raises(ModelSpecError):
        ModelSpec.from_dict({"nodes": [{"id": 0}]})


def test_spec_json_round_trip():
    spec = ModelSpec(((0, 2), (5, 1)), (TreeEdge(0, 5, 7, 1),))
    assert ModelSpec.from_dict(spec.to_dict()) == spec


def test_copies_are_farey_levels():
    rng = random.Random(11)
    for _ in range(20):
        k = rng.randint(1, 5)
        nodes = tuple((i, rng.randint(1, 3)) for i in range(k))
        edges = tuple(
            TreeEdge(rng.randrange(i), i, rng.randrange(4), rng.randrange(4)) for i in range(1, k)
        )
        tm = build_tree_model(ModelSpec(nodes, edges))
        assert is_in_K(tm.graph).member
        for node, level in nodes:
            sub, index = induced_subgraph(tm.graph, tm.copies[node])
            pin = {v: index[tm.copies[node][v]] for v in range(4)}
            assert find_isomorphism(build_level(level).graph, sub, pin) is not None


def test_generic_reproducible_and_in_K():
    g1, log1 = build_generic(42, 200)
    g2, log2 = build_generic(42, 200)
    assert g1 == g2 and log1 == log2
    assert is_in_K(g1).member
    assert build_generic(43, 200)[0] != g1


def test_generic_membership_after_every_step():
    g, log = build_generic(5, 120)
    for k in range(0, 121, 10):
        sub, _ = induced_subgraph(g, range(k))
        assert is_in_K(sub).member
        assert t_compliance(sub).edges_violating == ()


def test_generic_edge_cases():
    assert build_generic(0, 0)[0] == Graph(0)
    g, _ = build_generic(1, 30, GenericConfig(1.0, 0.0, 0.0))
    assert len(connected_components(g)) == 30
    with pytest.raises(ValueError):
        build_generic(1, -1)


def test_t_compliance_f3():
    rep = t_compliance(build_level(3).graph)
    assert (rep.edges_one_triangle, rep.edges_two_triangles, rep.edges_violating) == (16, 13, ())
    assert rep.k_member


def test_t_compliance_c4(c4):
    assert not t_compliance(c4).k_member
