"""Randomized splitters for regular uniform hypergraphs.

Case 1 colours every edge instance independently and resamples the edges at
a vertex that misses a colour until none does. Case 2 halves the colour set
recursively: a balanced random red/blue split of the edges, each half
re-levelled to the next scheduled degree and split again, with Case 1 at
the leaves. All logarithms are natural.
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from hypercover.errors import BudgetExhaustedError, InfeasibleError, InputError
from hypercover.hypergraph import (
    CoverPartition,
    EdgeInstance,
    MultiHypergraph,
    verify_cover_partition,
)
from hypercover.levelling import level, pull_back, pull_back_assignment
from hypercover.utils import log_warning, make_rng


@dataclass(frozen=True)
class LLLParams:
    """Parameters of the randomized splitters.

    Attributes:
        r: Edge size the input is levelled to (at least 3)
        k: Number of classes
        lambda_const: Multiplier of alpha in the Case 2 degree threshold
        round_budget: Resampling rounds per call; None means budget_factor * |E| * k
        budget_factor: Default budget multiplier
        seed: Master seed; every subproblem derives its own stream from it
        strict_balance: Use ceil(d/2 - Lambda) as the split criterion
        force_case: 1 or 2 to override the k <= M case choice
    """

    r: int
    k: int
    lambda_const: float = 4.0
    round_budget: Optional[int] = None
    budget_factor: int = 10
    seed: int = 0
    strict_balance: bool = False
    force_case: Optional[int] = None

    def __post_init__(self) -> None:
        if self.r < 3:
            raise InputError(f"randomized splitters need r >= 3, got {self.r}")
        if self.k < 1:
            raise InputError(f"k must be positive, got {self.k}")
        if self.round_budget is not None and self.round_budget < 1:
            raise InputError(f"round budget must be positive, got {self.round_budget}")
        if self.force_case not in (None, 1, 2):
            raise InputError(f"force_case must be 1 or 2, got {self.force_case}")

    @property
    def alpha(self) -> float:
        log_r = math.log(self.r)
        return 5 * math.log(log_r) / log_r

    @property
    def M(self) -> float:
        log_r = math.log(self.r)
        return log_r**2 / math.log(log_r)

    def budget(self, instance_count: int, k: int) -> int:
        if self.round_budget is not None:
            return self.round_budget
        return max(1, self.budget_factor * instance_count * k)

    @property
    def case(self) -> int:
        if self.force_case is not None:
            return self.force_case
        return 1 if self.k <= self.M else 2


def big_lambda(d: int, r: int) -> float:
    """Deviation allowance 4*sqrt(d*log(r*d)) of a balanced split."""
    return 4 * math.sqrt(d * math.log(r * d)) if r * d > 1 else 0.0


def threshold_case1(r: int, k: int) -> int:
    """Degree ceil((1+alpha)*k*log r) above which a random k-colouring is likely to work."""
    params = LLLParams(r, k)
    return math.ceil((1 + params.alpha) * k * math.log(r))


def case2_threshold(r: int, k: int, lambda_const: float = 4.0) -> int:
    params = LLLParams(r, k, lambda_const=lambda_const)
    return math.ceil((1 + lambda_const * params.alpha) * k * math.log(r))


def _require_regular_uniform(H: MultiHypergraph, operation: str) -> Tuple[int, int]:
    d, r = H.regularity, H.uniformity
    if d is None or r is None:
        raise InputError(f"{operation} needs a regular uniform hypergraph; level it first")
    return d, r


def _incidence_matrix(H: MultiHypergraph) -> np.ndarray:
    """n x d array of instance positions (H regular)."""
    position = {inst: i for i, inst in enumerate(H.instances())}
    return np.array(
        [[position[inst] for inst in H.incident_instances(v)] for v in range(H.n_vertices)],
        dtype=np.int64,
    ).reshape(H.n_vertices, -1)


# ----------------------------------------------------------------------
# Case 1
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Case1Diagnostics:
    """Local Lemma bookkeeping for one instance."""

    d: int
    r: int
    k: int
    p_bound: float
    exp_bound: float
    dependency: int
    lll_product: float

    @property
    def lll_condition(self) -> bool:
        return self.lll_product < 1


def case1_diagnostics(H: MultiHypergraph, k: int) -> Case1Diagnostics:
    """Probability that a vertex misses a colour and the resulting e*p*(Delta+1)."""
    if k < 1:
        raise InputError(f"k must be positive, got {k}")
    d, r = H.min_degree, H.max_edge_size
    p_bound = k * (1 - 1 / k) ** d
    exp_bound = k * math.exp(-d / k)
    if p_bound > exp_bound * (1 + 1e-12):
        raise AssertionError(f"k(1-1/k)^d = {p_bound} exceeds k*e^(-d/k) = {exp_bound}")
    dependency = H.max_degree * max(r - 1, 0)
    return Case1Diagnostics(
        d=d,
        r=r,
        k=k,
        p_bound=p_bound,
        exp_bound=exp_bound,
        dependency=dependency,
        lll_product=math.e * p_bound * (dependency + 1),
    )


def random_cover_resample(
    H: MultiHypergraph,
    k: int,
    params: LLLParams,
    rng: Optional[np.random.Generator] = None,
) -> CoverPartition:
    """Random k-colouring of the instances, resampled at bad vertices.

    A vertex is bad while its incident instances miss a colour. Each round
    redraws every instance at the lowest bad vertex. Raises
    BudgetExhaustedError with the remaining bad vertices when the round
    budget runs out.
    """
    if k < 1:
        raise InputError(f"k must be positive, got {k}")
    if H.n_vertices == 0:
        return CoverPartition(k, {inst: 0 for inst in H.instances()})
    d, _ = _require_regular_uniform(H, "random_cover_resample")
    if rng is None:
        rng = make_rng(params.seed, "case1")

    incidence = _incidence_matrix(H)
    rows = np.repeat(np.arange(H.n_vertices), d)
    colours = rng.integers(k, size=H.instance_count)

    def bad_vertices() -> np.ndarray:
        seen = np.zeros((H.n_vertices, k), dtype=bool)
        seen[rows, colours[incidence].ravel()] = True
        return np.flatnonzero(~seen.all(axis=1))

    budget = params.budget(H.instance_count, k)
    bad = bad_vertices()
    rounds = 0
    while bad.size:
        if rounds >= budget:
            raise BudgetExhaustedError(
                f"{bad.size} vertices still miss a colour after {budget} rounds",
                bad_vertices=frozenset(int(v) for v in bad),
            )
        v = int(bad[0])
        colours[incidence[v]] = rng.integers(k, size=d)
        rounds += 1
        bad = bad_vertices()

    return CoverPartition.from_labels(H, colours.tolist(), k)


# ----------------------------------------------------------------------
# Case 2
# ----------------------------------------------------------------------


def balance_threshold(d: int, r: int, strict: bool = False) -> int:
    """Edges of each colour every vertex needs after a balanced split."""
    if strict:
        return math.ceil(d / 2 - big_lambda(d, r))
    return d // 2 - math.ceil(math.sqrt(d))


def split_balanced(
    H: MultiHypergraph,
    params: LLLParams,
    rng: Optional[np.random.Generator] = None,
) -> Tuple[List[EdgeInstance], List[EdgeInstance]]:
    """Random red/blue split with every vertex on enough edges of each colour.

    When the threshold is not positive a single uniform split is returned.
    """
    d, r = _require_regular_uniform(H, "split_balanced")
    if rng is None:
        rng = make_rng(params.seed, "split")
    instances = H.instances()
    threshold = balance_threshold(d, r, params.strict_balance)
    sides = rng.integers(2, size=len(instances))

    if threshold > 0 and H.n_vertices:
        incidence = _incidence_matrix(H)
        budget = params.budget(len(instances), 2)
        rounds = 0
        while True:
            red_counts = (sides[incidence] == 0).sum(axis=1)
            unbalanced = np.flatnonzero(
                (red_counts < threshold) | (d - red_counts < threshold)
            )
            if not unbalanced.size:
                break
            if rounds >= budget:
                raise BudgetExhaustedError(
                    f"{unbalanced.size} vertices below {threshold} edges per colour "
                    f"after {budget} rounds",
                    bad_vertices=frozenset(int(v) for v in unbalanced),
                )
            v = int(unbalanced[0])
            sides[incidence[v]] = rng.integers(2, size=d)
            rounds += 1

    red = [inst for inst, s in zip(instances, sides) if s == 0]
    blue = [inst for inst, s in zip(instances, sides) if s == 1]
    return red, blue


def _splits(kk: int, params: LLLParams) -> bool:
    if kk < 2 or params.case == 1:
        return False
    if params.force_case == 2:
        return kk > 2
    return kk >= 2 * params.M / 3


def degree_schedule(d: int, r: int, k: int, params: LLLParams) -> List[int]:
    """Degree d_i every subproblem at depth i is levelled to.

    The list has one entry per depth of the deepest branch; the larger half
    of the colour set is followed.
    """
    schedule = [d]
    kk = k
    while _splits(kk, params):
        schedule.append(balance_threshold(schedule[-1], r, params.strict_balance))
        kk = kk - kk // 2
    return schedule


def cover_recursive(H: MultiHypergraph, k: int, params: LLLParams) -> CoverPartition:
    """k-split H by levelling and recursive balanced halving of the colour set."""
    if k < 1:
        raise InputError(f"k must be positive, got {k}")
    if H.n_vertices == 0:
        return CoverPartition(k, {inst: 0 for inst in H.instances()})
    if H.isolated_vertices():
        raise InfeasibleError(f"vertex {H.isolated_vertices()[0]} lies in no edge")
    r = params.r
    if H.max_edge_size > r:
        raise InputError(f"edge size {H.max_edge_size} exceeds r={r}")

    d0 = H.min_degree
    if params.case == 1:
        required = threshold_case1(r, k)
    else:
        required = case2_threshold(r, k, params.lambda_const)
    if d0 < required:
        log_warning(
            f"minimum degree {d0} is below the Case {params.case} "
            f"threshold {required}; the random splitter may fail"
        )

    schedule = degree_schedule(d0, r, k, params)
    levelling = level(H, r, d0)
    assignment = _solve(levelling.target, list(range(k)), 0, (), schedule, params)
    partition = pull_back(levelling, CoverPartition(k, assignment))

    result = verify_cover_partition(H, partition)
    if not result.valid:
        raise InfeasibleError(f"recursive split left class/vertex {result.witness} uncovered")
    return partition


def _solve(
    target: MultiHypergraph,
    colours: Sequence[int],
    depth: int,
    path: Tuple[str, ...],
    schedule: Sequence[int],
    params: LLLParams,
) -> Dict[EdgeInstance, int]:
    kk = len(colours)
    label = "/".join(path) or "root"

    if not _splits(kk, params):
        try:
            leaf = random_cover_resample(target, kk, params, make_rng(params.seed, "leaf", *path))
        except BudgetExhaustedError as e:
            raise BudgetExhaustedError(
                f"subproblem {label}: {e}", bad_vertices=e.bad_vertices, path=label
            ) from None
        return {inst: colours[c] for inst, c in leaf.assignment.items()}

    red, blue = split_balanced(target, params, make_rng(params.seed, "split", *path))
    half = kk // 2
    assignment: Dict[EdgeInstance, int] = {}
    halves = (("red", red, colours[:half]), ("blue", blue, colours[half:]))
    for side, instances, side_colours in halves:
        sub, provenance = target.sub_hypergraph(instances)
        d_next = schedule[depth + 1] if depth + 1 < len(schedule) else sub.min_degree
        if d_next < 1:
            d_next = sub.min_degree
        if d_next < 1:
            raise InfeasibleError(f"subproblem {label}/{side} leaves a vertex with no edge")
        levelling = level(sub, target.uniformity or params.r, d_next)
        child = _solve(levelling.target, side_colours, depth + 1, path + (side,), schedule, params)
        for sub_inst, c in pull_back_assignment(levelling, child).items():
            assignment[provenance[sub_inst.edge_index]] = c
    return assignment
