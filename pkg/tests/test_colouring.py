import networkx as nx
import pytest

from hypercover.errors import InputError, UnsupportedInputError
from hypercover.generators import gen_complete, gen_random_graph, gen_triangle_multi
from hypercover.graphs import (
    bipartition_sides,
    max_cut_local,
    orient_outdeg_half,
    spread_colour_bipartite,
    vizing_edge_colour,
)
from hypercover.hypergraph import MultiHypergraph


def _petersen() -> MultiHypergraph:
    return MultiHypergraph.from_edges(10, nx.petersen_graph().edges())


@pytest.mark.parametrize(
    "G",
    [gen_complete(4), gen_complete(5), gen_complete(6), _petersen()],
    ids=["K4", "K5", "K6", "petersen"],
)
def test_vizing_is_proper_within_delta_plus_one(G):
    colouring = vizing_edge_colour(G)
    assert colouring.is_proper(G)
    assert colouring.palette_size == G.max_degree + 1
    assert all(0 <= c <= G.max_degree for c in colouring.colours.values())


@pytest.mark.parametrize("seed", range(5))
def test_vizing_on_random_graphs(seed):
    G = gen_random_graph(12, 5, seed, extra_edges=6)
    colouring = vizing_edge_colour(G)
    assert colouring.is_proper(G)
    assert colouring.colours_used <= G.max_degree + 1


def test_vizing_rejects_multigraphs():
    with pytest.raises(UnsupportedInputError):
        vizing_edge_colour(gen_triangle_multi(4))


def test_vizing_rejects_hyperedges(fano):
    with pytest.raises(UnsupportedInputError):
        vizing_edge_colour(fano)


def test_bipartition_of_even_cycle(c4):
    sides = bipartition_sides(c4)
    assert all(sides[u] != sides[v] for (u, v), _ in c4.edges)


def test_odd_cycle_is_not_bipartite(triangle):
    with pytest.raises(InputError):
        bipartition_sides(triangle)


def test_spread_colouring_of_even_cycle(c4):
    colouring = spread_colour_bipartite(c4, 2)
    assert colouring.is_spreading(c4, 2)
    assert colouring.is_proper(c4)


def test_spread_colouring_of_multigraph():
    B = MultiHypergraph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)], [3, 2, 1, 4])
    for k in (1, 2, 3, 4):
        assert spread_colour_bipartite(B, k).is_spreading(B, k)


def test_spread_colouring_rejects_bad_sides(c4):
    with pytest.raises(InputError):
        spread_colour_bipartite(c4, 2, sides=(0, 0, 1, 1))


@pytest.mark.parametrize(
    "G",
    [gen_complete(4), gen_complete(7), gen_triangle_multi(5), _petersen()],
    ids=["K4", "K7", "triangle5", "petersen"],
)
def test_local_max_cut_crosses_half_of_each_degree(G):
    cut = max_cut_local(G)
    for v in range(G.n_vertices):
        assert 2 * cut.cross_degree(G, v) >= G.degree(v)


@pytest.mark.parametrize(
    "G",
    [
        gen_complete(5),
        gen_complete(6),
        gen_triangle_multi(6),
        MultiHypergraph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]),
        MultiHypergraph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4)]),
    ],
    ids=["K5", "K6", "triangle6", "path", "two-components"],
)
def test_orientation_gives_half_outdegree(G):
    orientation = orient_outdeg_half(G)
    assert len(orientation.directions) == G.instance_count
    for v in range(G.n_vertices):
        assert orientation.outdegree(v) >= G.degree(v) // 2
        assert len(orientation.in_instances(v)) + orientation.outdegree(v) == G.degree(v)
