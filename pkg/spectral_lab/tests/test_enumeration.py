import itertools

import networkx
import numpy
import pytest

from spectral_lab import SpectralLabValueError
from spectral_lab.enumeration import (
    automorphism_orbits,
    brute_force_connected,
    canonical_form,
    canonical_labeling,
    enumerate_connected,
    enumerate_graphs,
    enumerate_shard,
    shard_enumeration,
)
from spectral_lab.graphs import (
    complete_graph,
    cycle_graph,
    graph6_decode,
    graph6_encode,
    graph_from_edges,
    is_connected,
    path_graph,
    random_graph,
    relabel,
    star_graph,
)

CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}
ALL_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}


def _collect(n, connected=True):
    found = []
    if connected:
        count = enumerate_connected(n, found.append)
    else:
        count = enumerate_graphs(n, found.append)
    assert count == len(found)
    return found


def _to_networkx(g):
    nx_graph = networkx.Graph()
    nx_graph.add_nodes_from(range(g.n))
    nx_graph.add_edges_from(g.edges())
    return nx_graph


@pytest.mark.parametrize("n, expected", sorted(CONNECTED_COUNTS.items()))
def test_connected_counts(n, expected):
    graphs = _collect(n)
    assert len(graphs) == expected
    assert all(is_connected(g) for g in graphs)
    assert len({graph6_encode(g) for g in graphs}) == expected


@pytest.mark.parametrize("n, expected", sorted(ALL_COUNTS.items()))
def test_all_graph_counts(n, expected):
    assert len(_collect(n, connected=False)) == expected


@pytest.mark.slow
def test_connected_count_order_8():
    assert enumerate_connected(8, lambda g: None) == 11117


def test_emitted_graphs_are_canonical():
    for g in _collect(6):
        assert graph6_encode(g) == canonical_form(g)


def test_emitted_graphs_are_pairwise_non_isomorphic():
    graphs = [_to_networkx(g) for g in _collect(5)]
    for a, b in itertools.combinations(graphs, 2):
        assert not networkx.is_isomorphic(a, b)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_brute_force_agrees(n):
    brute = brute_force_connected(n)
    assert [c.canon for c in brute] == sorted(graph6_encode(g) for g in _collect(n))
    assert all(graph6_encode(c.graph) == c.canon for c in brute)


@pytest.mark.slow
@pytest.mark.parametrize("n", [6, 7])
def test_brute_force_agrees_slow(n):
    brute = brute_force_connected(n)
    assert len(brute) == CONNECTED_COUNTS[n]
    assert [c.canon for c in brute] == sorted(graph6_encode(g) for g in _collect(n))


@pytest.mark.parametrize("n", [0, 8])
def test_brute_force_limits(n):
    with pytest.raises(SpectralLabValueError):
        brute_force_connected(n)


def test_canonical_form_is_an_isomorphism_invariant():
    rng = numpy.random.default_rng(23)
    for n in range(1, 11):
        for density in (0.2, 0.5, 0.8):
            g = random_graph(n, density, rng)
            order = [int(v) for v in rng.permutation(n)]
            h = relabel(g, order)
            assert canonical_form(g) == canonical_form(h)
            assert networkx.is_isomorphic(
                _to_networkx(graph6_decode(canonical_form(g))), _to_networkx(g)
            )


def test_canonical_form_separates_classes():
    rng = numpy.random.default_rng(29)
    graphs = [random_graph(6, 0.5, rng) for _ in range(40)]
    for a, b in itertools.combinations(graphs, 2):
        same = canonical_form(a) == canonical_form(b)
        assert same == networkx.is_isomorphic(_to_networkx(a), _to_networkx(b))


def test_regular_graphs_with_equal_refinement():
    # C_6 and two disjoint triangles are both 2-regular on six vertices
    c6 = cycle_graph(6)
    triangles = graph_from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    assert canonical_form(c6) != canonical_form(triangles)
    prism = graph_from_edges(
        6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    )
    k33 = graph_from_edges(6, [(u, v) for u in range(3) for v in range(3, 6)])
    assert canonical_form(prism) != canonical_form(k33)


@pytest.mark.parametrize(
    "g, orbits",
    [
        (path_graph(4), ((0, 3), (1, 2))),
        (star_graph(3), ((0,), (1, 2, 3))),
        (complete_graph(4), ((0, 1, 2, 3),)),
        (cycle_graph(5), ((0, 1, 2, 3, 4),)),
        (graph_from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3)]), ((0, 1), (2,), (3,))),
    ],
)
def test_automorphism_orbits(g, orbits):
    assert automorphism_orbits(g) == orbits


def test_canonical_labeling_puts_max_degree_last():
    rng = numpy.random.default_rng(31)
    for n in range(2, 9):
        g = random_graph(n, 0.5, rng)
        labeling = canonical_labeling(g)
        assert sorted(labeling.order) == list(range(n))
        assert g.degree(labeling.order[-1]) == max(g.degrees())
        assert labeling.last_orbit >> labeling.order[-1] & 1


@pytest.mark.parametrize("n, depth", [(5, 2), (6, 3), (6, 5), (7, 4)])
def test_shards_cover_the_generation_once(n, depth):
    shards = shard_enumeration(n, depth)
    assert len(shards) == ALL_COUNTS[depth]
    assert len({shard.shard_id for shard in shards}) == len(shards)
    found = []
    total = sum(enumerate_shard(shard, found.append) for shard in shards)
    assert total == len(found) == CONNECTED_COUNTS[n]
    assert sorted(graph6_encode(g) for g in found) == sorted(
        graph6_encode(g) for g in _collect(n)
    )


def test_shard_depth_limits():
    with pytest.raises(SpectralLabValueError):
        shard_enumeration(5, 5)
    with pytest.raises(SpectralLabValueError):
        shard_enumeration(5, 0)


def test_invalid_orders():
    with pytest.raises(SpectralLabValueError):
        enumerate_connected(0, lambda g: None)


class _Stop(Exception): ...


def test_large_orders_warn():
    def stop(g):
        raise _Stop

    with pytest.warns(UserWarning, match="beyond the supported range"):
        with pytest.raises(_Stop):
            enumerate_connected(11, stop)
