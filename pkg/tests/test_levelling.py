import pytest

from hypercover.errors import InfeasibleError, InputError, VerificationError
from hypercover.exact import SolverLimits, feasible_k
from hypercover.hypergraph import (
    CoverPartition,
    EdgeInstance,
    MultiHypergraph,
    verify_cover_partition,
)
from hypercover.levelling import (
    LevellingMap,
    is_levelling,
    level,
    levelling_violations,
    pull_back,
    trim_to_degree,
)


def test_trim_k4_to_degree_two(k4):
    trimmed, provenance = trim_to_degree(k4, 2)
    assert trimmed.is_regular(2)
    # (0,3) and (1,3) keep only vertex 3; (2,3) loses both ends
    assert trimmed.edge_sizes == (2, 2, 1, 2, 1, 0)
    assert set(provenance.values()) == set(k4.instances())


def test_trim_groups_copies_that_stay_equal():
    H = MultiHypergraph.from_edges(2, [(0, 1)], [3])
    trimmed, provenance = trim_to_degree(H, 2)
    assert trimmed.is_regular(2)
    assert trimmed.edges == (((0, 1), 2), ((), 1))
    assert provenance[EdgeInstance(1, 0)] == EdgeInstance(0, 2)


def test_trim_below_minimum_degree(triangle):
    with pytest.raises(InfeasibleError):
        trim_to_degree(triangle, 3)


def test_simple_regular_uniform_input_levels_to_itself(fano):
    L = level(fano, 3, 3)
    assert L.is_identity
    assert is_levelling(L, 3, 3)


def test_level_k4(k4):
    L = level(k4, 3, 2)
    assert is_levelling(L, 3, 2)
    assert L.target.is_uniform(3)
    assert L.target.is_regular(2)
    # two copies of V0 plus 1+1+2+1+2+3 padding vertices
    assert L.target.n_vertices == 18
    assert L.embedded == (0, 1, 2, 3)


def test_level_rejects_oversized_edges(fano):
    with pytest.raises(InfeasibleError):
        level(fano, 2, 3)


def test_level_rejects_bad_degree(fano):
    with pytest.raises(InputError):
        level(fano, 3, 0)


def test_violations_of_a_damaged_map(k4):
    L = level(k4, 3, 2)
    partial = dict(L.edge_map)
    partial.pop(EdgeInstance(0, 0))
    damaged = LevellingMap(L.source, L.target, partial, L.embedded)
    problems = levelling_violations(damaged, 3, 2)
    assert "edge map is not total on source instances" in problems
    assert any("not an image" in p for p in problems)
    assert not is_levelling(damaged, 3, 2)


def test_pull_back_of_a_doubled_edge():
    H = MultiHypergraph.from_edges(3, [(0, 1, 2)], [2])
    L = level(H, 3, 2)
    assert L.target.n_vertices == 6
    target_split = CoverPartition.from_labels(L.target, [0, 1, 0, 1], 2)
    P = pull_back(L, target_split)
    assert dict(P.assignment) == {EdgeInstance(0, 0): 0, EdgeInstance(0, 1): 1}


def test_pull_back_rejects_invalid_target_partition():
    H = MultiHypergraph.from_edges(3, [(0, 1, 2)], [2])
    L = level(H, 3, 2)
    with pytest.raises(VerificationError):
        pull_back(L, CoverPartition.from_labels(L.target, [0, 0, 0, 1], 2))


def test_pull_back_keeps_random_splits_valid(random_hypergraph):
    limits = SolverLimits(node_budget=50_000)
    two_class_checks = 0
    for seed in range(200):
        H = random_hypergraph(seed)
        r, d = H.max_edge_size, min(H.min_degree, 2)
        L = level(H, r, d)
        assert is_levelling(L, r, d), f"seed {seed}: {levelling_violations(L, r, d)}"

        single = CoverPartition(1, {inst: 0 for inst in L.target.instances()})
        assert verify_cover_partition(H, pull_back(L, single)).valid

        if d == 2:
            outcome = feasible_k(L.target, 2, limits)
            if outcome.feasible:
                P = pull_back(L, outcome.partition)
                assert P.k == 2
                assert verify_cover_partition(H, P).valid, f"seed {seed}"
                two_class_checks += 1
    assert two_class_checks > 0
