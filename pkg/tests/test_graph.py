import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import complete, cycle, graphs
from pawkernel.errors import InvalidEditError, ParseError
from pawkernel.graph import (
    Graph,
    Instance,
    apply_edits,
    common_neighbors,
    connected_components,
    distance_layers,
    format_edge_list,
    induced_subgraph,
    pair,
    parse_edge_list,
    triangles,
)

A, B, C, D = 0, 1, 2, 3


def test_toggle_removes_present_edge():
    tri = Graph(range(3), [(A, B), (B, C), (C, A)])
    assert apply_edits(tri, [(A, B)]) == Graph(range(3), [(B, C), (C, A)])


def test_toggle_adds_absent_edge():
    g = Graph(range(3), [(A, B)])
    assert apply_edits(g, [(B, C)]) == Graph(range(3), [(A, B), (B, C)])


@given(graphs())
def test_empty_edit_is_identity(g):
    assert apply_edits(g, []) == g


@given(graphs(min_n=2), st.data())
def test_toggling_twice_restores(g, data):
    vs = g.vertices
    u, v = data.draw(st.sampled_from([(x, y) for x in vs for y in vs if x < y]))
    assert apply_edits(apply_edits(g, [(u, v)]), [(v, u)]) == g


def test_edit_rejects_unknown_vertex_and_self_loop():
    g = Graph(range(2), [(0, 1)])
    with pytest.raises(InvalidEditError):
        apply_edits(g, [(0, 5)])
    with pytest.raises(InvalidEditError):
        pair(1, 1)


def test_components():
    assert connected_components(Graph()) == []
    assert connected_components(Graph(range(4), [(A, B), (C, D)])) == [
        frozenset({A, B}),
        frozenset({C, D}),
    ]
    assert connected_components(cycle(5)) == [frozenset(range(5))]


@given(graphs())
def test_components_partition_vertices(g):
    comps = connected_components(g)
    assert sum(map(len, comps)) == len(g)
    assert frozenset().union(*comps) == frozenset(g.vertices)
    for c in comps:
        assert all(g.neighbors(v) <= c for v in c)


def test_distance_layers():
    path = Graph(range(3), [(A, B), (B, C)])
    assert distance_layers(path, {A}, 2) == {0: {A}, 1: {B}, 2: {C}}
    assert distance_layers(path, path.vertices, 4) == {0: frozenset(path.vertices)}
    star = Graph(range(4), [(0, 1), (0, 2), (0, 3)])
    assert distance_layers(star, {0}, 5) == {0: {0}, 1: {1, 2, 3}}


def test_induced_subgraph():
    k4 = Graph(range(4), complete(range(4)))
    assert induced_subgraph(k4, {A, B, C}) == Graph(range(3), complete(range(3)))
    assert induced_subgraph(k4, set()) == Graph()
    assert induced_subgraph(k4, k4.vertices) == k4


def test_common_neighbors():
    k4 = Graph(range(4), complete(range(4)))
    assert common_neighbors(k4, A, B) == {C, D}
    assert common_neighbors(cycle(4), A, C) == {B, D}
    assert common_neighbors(Graph(range(2)), A, B) == frozenset()
    with pytest.raises(ValueError):
        common_neighbors(k4, A, A)


def test_vertex_ids_survive_deletion():
    g = Graph(range(5), [(0, 4), (3, 4)]).remove_vertices([1, 2])
    assert g.vertices == (0, 3, 4)
    assert g.neighbors(4) == {0, 3}


def test_remove_edges_rejects_non_edges():
    with pytest.raises(InvalidEditError):
        Graph(range(2)).remove_edges([(0, 1)])


@given(graphs())
def test_triangles_match_brute_force(g):
    vs = g.vertices
    expected = [
        (a, b, c)
        for i, a in enumerate(vs)
        for j, b in enumerate(vs[i + 1 :], i + 1)
        for c in vs[j + 1 :]
        if g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c)
    ]
    assert list(triangles(g)) == expected


# -- edge-list format ---------------------------------------------------------


def test_parse_with_comments_and_blanks():
    inst = parse_edge_list("# a paw\n4 4 1\n0 1\n\n0 2 # edge\n1 2\n2 3\n")
    assert inst.budget == 1
    assert inst.graph.edges() == [(0, 1), (0, 2), (1, 2), (2, 3)]


@pytest.mark.parametrize(
    "text",
    [
        "",
        "3 1\n0 1\n",
        "3 2 1\n0 1\n",
        "3 1 1\n0 3\n",
        "3 1 1\n1 1\n",
        "3 2 1\n0 1\n1 0\n",
        "3 1 x\n0 1\n",
        "3 1 -1\n0 1\n",
    ],
    ids=["empty", "short-header", "count", "range", "loop", "duplicate", "nonint", "negative"],
)
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        parse_edge_list(text)


@given(graphs(), st.integers(0, 5))
def test_roundtrip(g, k):
    inst = Instance(g, k)
    assert parse_edge_list(format_edge_list(inst)) == inst


def test_format_relabels_sparse_ids():
    inst = Instance(Graph([3, 7, 9], [(3, 9)]), 2)
    assert format_edge_list(inst) == "3 1 2\n0 2\n"


def test_negative_budget_rejected():
    with pytest.raises(ValueError):
        Instance(Graph(), -1)
