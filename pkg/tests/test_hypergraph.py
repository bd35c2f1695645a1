import pytest

from hypercover.errors import InputError, UnsupportedInputError
from hypercover.hypergraph import (
    CoverPartition,
    EdgeInstance,
    MultiHypergraph,
    degree,
    dualize,
    induced_dual_colouring,
    is_polychromatic,
    verify_cover_partition,
)

# Cycle 0-1-2-3-0 in class 0, diagonals in class 1 (gen_complete edge order)
K4_TWO_SPLIT = [0, 1, 0, 0, 1, 0]


def test_fano_is_regular_uniform_and_simple(fano):
    assert fano.n_vertices == 7
    assert len(fano.edges) == 7
    assert fano.uniformity == 3
    assert fano.regularity == 3
    assert fano.is_simple()


def test_from_edges_sorts_vertices():
    H = MultiHypergraph.from_edges(3, [(2, 0)])
    assert H.edges == (((0, 2), 1),)


@pytest.mark.parametrize(
    "edges, multiplicities",
    [
        ([(0, 0)], None),
        ([(0, 3)], None),
        ([(0, 1)], [0]),
    ],
)
def test_invalid_edges_are_rejected(edges, multiplicities):
    with pytest.raises(InputError):
        MultiHypergraph.from_edges(3, edges, multiplicities)


def test_instances_enumerate_copies():
    H = MultiHypergraph.from_edges(2, [(0, 1)], [3])
    assert H.instances() == (EdgeInstance(0, 0), EdgeInstance(0, 1), EdgeInstance(0, 2))
    assert degree(H, 0) == 3
    assert H.total_weight == 3
    assert not H.is_simple()


def test_isolated_vertices_and_irregularity():
    H = MultiHypergraph.from_edges(4, [(0, 1), (1, 2)])
    assert H.isolated_vertices() == (3,)
    assert H.regularity is None
    assert H.min_degree == 0
    assert H.max_degree == 2


def test_verify_accepts_single_class(triangle):
    P = CoverPartition.from_labels(triangle, [0, 0, 0], 1)
    assert verify_cover_partition(triangle, P).valid


def test_verify_reports_first_uncovered_pair(triangle):
    P = CoverPartition.from_classes(2, [[(0, 0)], [(1, 0), (2, 0)]])
    result = verify_cover_partition(triangle, P)
    assert not result.valid
    assert result.witness == (0, 2)


def test_partial_partition_is_an_input_error(triangle):
    P = CoverPartition.from_classes(2, [[(0, 0)], [(1, 0)]])
    with pytest.raises(InputError, match="unassigned"):
        verify_cover_partition(triangle, P)


def test_instance_in_two_classes_is_rejected():
    with pytest.raises(InputError):
        CoverPartition.from_classes(2, [[(0, 0)], [(0, 0)]])


def test_class_out_of_range_is_rejected():
    with pytest.raises(InputError):
        CoverPartition(2, {EdgeInstance(0, 0): 2})


def test_class_sizes(k4):
    P = CoverPartition.from_labels(k4, K4_TWO_SPLIT, 2)
    assert P.class_sizes() == [4, 2]
    assert verify_cover_partition(k4, P).valid


def test_dual_of_dual_is_the_original(fano):
    assert dualize(dualize(fano)) == fano


@pytest.mark.parametrize("seed", range(25))
def test_dual_of_dual_on_random_hypergraphs(seed, random_hypergraph):
    H, _ = random_hypergraph(seed, n=7, m=9, r=4).with_unit_multiplicities()
    D = dualize(H)
    assert D.n_vertices == len(H.edges)
    assert len(D.edges) == H.n_vertices
    assert dualize(D) == H


def test_dualize_rejects_repeated_edges():
    H = MultiHypergraph.from_edges(2, [(0, 1)], [2])
    with pytest.raises(UnsupportedInputError):
        dualize(H)


def test_dualize_rejects_isolated_vertex():
    H = MultiHypergraph.from_edges(3, [(0, 1)])
    with pytest.raises(InputError):
        dualize(H)


def test_split_induces_polychromatic_dual_colouring(k4):
    P = CoverPartition.from_labels(k4, K4_TWO_SPLIT, 2)
    colouring = induced_dual_colouring(k4, P)
    assert colouring == tuple(K4_TWO_SPLIT)
    assert is_polychromatic(dualize(k4), colouring, 2)
    assert not is_polychromatic(dualize(k4), (0,) * 6, 2)


@pytest.mark.parametrize("seed", range(25))
def test_degrees_sum_to_edge_sizes_times_multiplicity(seed, random_hypergraph):
    H = random_hypergraph(seed, n=7, m=9, r=4, max_multiplicity=3)
    assert int(H.degrees().sum()) == sum(len(vertices) * m for vertices, m in H.edges)
    assert int(H.degrees().sum()) == sum(H.edge_sizes[inst.edge_index] for inst in H.instances())
