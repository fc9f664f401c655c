import networkx
import numpy
import pytest

from spectral_lab import Graph6Error, InvalidFamily, InvalidGraph
from spectral_lab.enumeration import enumerate_graphs
from spectral_lab.graphs import (
    MAX_ORDER,
    FamilyKind,
    FamilySpec,
    Graph,
    build_family,
    complete_graph,
    components,
    cycle_graph,
    disjoint_union,
    exceptional_kind,
    gadget_catalog,
    graph6_decode,
    graph6_encode,
    graph_from_edges,
    induced_subgraph,
    is_complete,
    is_connected,
    path_graph,
    random_graph,
    remove_vertices,
    star_graph,
    table1_catalog,
    triangle_count,
)


def _to_networkx(g):
    nx_graph = networkx.Graph()
    nx_graph.add_nodes_from(range(g.n))
    nx_graph.add_edges_from(g.edges())
    return nx_graph


def test_graph_basics():
    g = graph_from_edges(4, [(0, 1), (1, 2), (2, 0), (1, 3), (3, 1)])
    assert g.n == 4
    assert g.m == g.edge_count == 4
    assert g.degrees() == [2, 3, 2, 1]
    assert g.neighbors(1) == [0, 2, 3]
    assert g.has_edge(3, 1) and not g.has_edge(0, 3)
    assert g.edges() == [(0, 1), (0, 2), (1, 2), (1, 3)]
    a = g.adjacency_matrix()
    assert (a == a.T).all()
    assert a.sum() == 2 * g.m
    assert triangle_count(g) == 1


@pytest.mark.parametrize(
    "n, edges",
    [
        (0, []),
        (MAX_ORDER + 1, []),
        (3, [(1, 1)]),
        (3, [(0, 3)]),
        (3, [(-1, 2)]),
    ],
)
def test_invalid_graphs(n, edges):
    with pytest.raises(InvalidGraph):
        graph_from_edges(n, edges)


def test_asymmetric_rows_are_rejected():
    with pytest.raises(InvalidGraph, match="symmetric"):
        Graph(2, (0b10, 0b00))
    with pytest.raises(InvalidGraph, match="loop"):
        Graph(2, (0b01, 0b00))


def test_connectivity_and_components():
    g = disjoint_union(path_graph(3), complete_graph(2))
    assert not is_connected(g)
    parts = components(g)
    assert [(part.n, part.m) for part in parts] == [(3, 2), (2, 1)]
    assert all(is_connected(part) for part in parts)
    assert is_connected(graph_from_edges(1, []))


def test_induced_subgraph_relabels_in_order():
    c5 = cycle_graph(5)
    sub = induced_subgraph(c5, [4, 0, 1])
    assert sub.edges() == [(0, 1), (0, 2)]
    assert induced_subgraph(c5, 0b00111).edges() == [(0, 1), (1, 2)]
    leaves = remove_vertices(star_graph(3), [0])
    assert (leaves.n, leaves.m) == (3, 0)
    assert len(components(leaves)) == 3
    with pytest.raises(InvalidGraph):
        induced_subgraph(c5, [])
    with pytest.raises(InvalidGraph):
        induced_subgraph(c5, [5])


def test_disjoint_union_size_limit():
    with pytest.raises(InvalidGraph):
        disjoint_union(complete_graph(40), complete_graph(30))


@pytest.mark.parametrize(
    "g, expected",
    [
        (graph_from_edges(1, []), "K_1"),
        (complete_graph(2), "K_2"),
        (path_graph(3), "P_3"),
        (complete_graph(3), "K_n"),
        (complete_graph(7), "K_n"),
        (path_graph(4), "none"),
        (cycle_graph(5), "none"),
    ],
)
def test_exceptional_kind(g, expected):
    assert exceptional_kind(g.n, g.m) == expected


@pytest.mark.parametrize(
    "g, g6",
    [
        (path_graph(3), "Bg"),
        (complete_graph(3), "Bw"),
        (complete_graph(4), "C~"),
        (path_graph(4), "Ch"),
        (graph_from_edges(1, []), "@"),
        (graph_from_edges(2, []), "A?"),
    ],
)
def test_graph6_known_strings(g, g6):
    assert graph6_encode(g) == g6
    assert graph6_decode(g6) == g


@pytest.mark.parametrize(
    "n, classes", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)]
)
def test_graph6_round_trips_every_class(n, classes):
    graphs = []
    assert enumerate_graphs(n, graphs.append) == classes
    for g in graphs:
        text = graph6_encode(g)
        assert graph6_decode(text) == g
        expected = networkx.to_graph6_bytes(_to_networkx(g), header=False)
        assert text == expected.decode("ascii").strip()
    assert len({graph6_encode(g) for g in graphs}) == classes


@pytest.mark.parametrize("n", [1, 2, 5, 7, 12, 30, 62])
def test_graph6_matches_networkx(n):
    rng = numpy.random.default_rng(n)
    for density in (0.0, 0.3, 0.7, 1.0):
        g = random_graph(n, density, rng)
        expected = networkx.to_graph6_bytes(_to_networkx(g), header=False)
        assert graph6_encode(g) == expected.decode("ascii").strip()
        assert graph6_decode(expected) == g


@pytest.mark.parametrize(
    "text",
    ["", "?", "B", "Bgg", "Bh", "B\x7f", "\x7f" + "?" * 64],
)
def test_graph6_decode_errors(text):
    with pytest.raises(Graph6Error):
        graph6_decode(text)


@pytest.mark.parametrize(
    "kind, params, order, m",
    [
        (FamilyKind.path, (6,), 6, 5),
        (FamilyKind.cycle, (6,), 6, 6),
        (FamilyKind.complete, (6,), 6, 15),
        (FamilyKind.star, (4,), 5, 4),
        (FamilyKind.complete_minus_edge, (6,), 6, 14),
        (FamilyKind.complete_plus_pendant, (6,), 6, 11),
        (FamilyKind.clique_k2, (7,), 7, 13),
        (FamilyKind.subdivided_star, (5, 2), 8, 7),
        (FamilyKind.gadget, (12,), 8, 10),
    ],
)
def test_build_family(kind, params, order, m):
    spec = FamilySpec(kind, params)
    g = build_family(spec)
    assert spec.order == g.n == order
    assert g.m == m
    assert is_connected(g)


def test_family_labeling():
    cme = build_family(FamilySpec(FamilyKind.complete_minus_edge, (5,)))
    assert not cme.has_edge(0, 1)
    assert cme.m == 9
    pendant = build_family(FamilySpec(FamilyKind.complete_plus_pendant, (5,)))
    assert pendant.neighbors(0) == [1]
    assert is_complete(induced_subgraph(pendant, range(1, 5)))
    gadget = build_family(FamilySpec("clique-k2", (6,)))
    assert gadget.neighbors(4) == [0, 5]
    assert gadget.neighbors(5) == [0, 4]
    star = build_family(FamilySpec("subdivided-star", (4, 2)))
    assert star.degree(0) == 4
    assert [star.degree(v) for v in range(1, 3)] == [2, 2]
    assert [star.degree(v) for v in range(3, 7)] == [1, 1, 1, 1]


@pytest.mark.parametrize(
    "kind, params",
    [
        (FamilyKind.clique_k2, (4,)),
        (FamilyKind.cycle, (2,)),
        (FamilyKind.subdivided_star, (4, 4)),
        (FamilyKind.subdivided_star, (4, 0)),
        (FamilyKind.subdivided_star, (4,)),
        (FamilyKind.gadget, (18,)),
        ("no-such-family", (4,)),
    ],
)
def test_invalid_family(kind, params):
    with pytest.raises((InvalidFamily, ValueError)):
        FamilySpec(kind, params)


def test_family_too_large_to_build():
    spec = FamilySpec(FamilyKind.complete_plus_pendant, (500,))
    assert spec.order == 500
    with pytest.raises(InvalidFamily):
        build_family(spec)


def test_gadget_catalog():
    catalog = gadget_catalog()
    assert sorted(catalog) == list(range(1, 18))
    assert all(is_connected(g) for g in catalog.values())
    orders = {index: g.n for index, g in catalog.items()}
    assert orders[12] == 8
    assert orders[15] == orders[16] == 7
    assert sum(1 for g in catalog.values() if g.n == 5) == 8


def test_table1_catalog_order():
    names = list(table1_catalog())
    assert names[:6] == ["P_3", "P_4", "P_5", "K_{1,3}", "C_4", "C_5"]
    assert names[6:] == [f"H_{i}" for i in range(1, 18)]
