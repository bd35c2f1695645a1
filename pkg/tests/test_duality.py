from itertools import combinations, combinations_with_replacement, product

import pytest

from hypercover.exact import feasible_k, has_polychromatic_colouring
from hypercover.hypergraph import (
    CoverPartition,
    MultiHypergraph,
    dualize,
    induced_dual_colouring,
    is_polychromatic,
    verify_cover_partition,
)


def _small_hypergraphs(n: int):
    """Hypergraphs on n vertices with 1..4 simple edges and no isolated vertex.

    One labelling per degree order is kept (degrees non-increasing in the vertex index).
    """
    subsets = [s for size in range(1, n + 1) for s in combinations(range(n), size)]
    for m in range(1, 5):
        for edges in combinations_with_replacement(subsets, m):
            degrees = [0] * n
            for edge in edges:
                for v in edge:
                    degrees[v] += 1
            if degrees[-1] == 0 or any(a < b for a, b in zip(degrees, degrees[1:])):
                continue
            yield MultiHypergraph.from_edges(n, edges)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_two_splits_are_dual_rainbow_colourings(n):
    checked = 0
    for H in _small_hypergraphs(n):
        D = dualize(H)
        for labels in product(range(2), repeat=H.instance_count):
            P = CoverPartition.from_labels(H, labels, 2)
            assert verify_cover_partition(H, P).valid == is_polychromatic(
                D, induced_dual_colouring(H, P), 2
            )
        checked += 1
    assert checked


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("k", [2, 3])
def test_split_exists_iff_dual_has_polychromatic_colouring(n, k):
    for H in _small_hypergraphs(n):
        split = feasible_k(H, k).feasible
        assert split == (has_polychromatic_colouring(dualize(H), k) is not None)


def test_small_corpus_sizes():
    assert sum(1 for _ in _small_hypergraphs(3)) == 83
