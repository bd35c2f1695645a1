"""Exact solvers: minimum edge covers, k-split decisions, covering numbers.

These are exponential searches meant for desk-scale instances. A search that
runs out of budget reports `unknown`, never a guess.
"""

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from hypercover.errors import BudgetExhaustedError, InfeasibleError, InputError, InternalError
from hypercover.hypergraph import (
    CoverPartition,
    EdgeInstance,
    MultiHypergraph,
    verify_cover_partition,
)

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
UNKNOWN = "unknown"
EXACT = "exact"

DEFAULT_NODE_BUDGET = 2_000_000


@dataclass(frozen=True)
class SolverLimits:
    """Search caps; exceeding one turns the answer into `unknown`."""

    max_k: Optional[int] = None
    node_budget: int = DEFAULT_NODE_BUDGET
    time_budget: Optional[float] = None

    def __post_init__(self) -> None:
        if self.node_budget < 1:
            raise InputError(f"node budget must be positive, got {self.node_budget}")
        if self.max_k is not None and self.max_k < 1:
            raise InputError(f"max_k must be positive, got {self.max_k}")


class _BudgetExceeded(Exception):
    pass


class _Counter:
    """Shared node and wall-clock accounting for one solver call."""

    def __init__(self, limits: SolverLimits):
        self.limits = limits
        self.nodes = 0
        self.started = time.perf_counter()

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.limits.node_budget:
            raise _BudgetExceeded
        if self.limits.time_budget is not None and self.nodes % 1024 == 0:
            if time.perf_counter() - self.started > self.limits.time_budget:
                raise _BudgetExceeded


# ----------------------------------------------------------------------
# Minimum edge covers
# ----------------------------------------------------------------------


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def min_cover_size(H: MultiHypergraph, target: Optional[Iterable[int]] = None) -> int:
    """Fewest edges whose union contains `target` (default: every vertex).

    Branch and bound over the uncovered set, branching on the edges through
    the uncovered vertex with fewest options. Bounds: greedy cover from above,
    ceil(uncovered / largest edge) from below.
    """
    goal = 0
    for v in range(H.n_vertices) if target is None else target:
        if not 0 <= v < H.n_vertices:
            raise InputError(f"vertex {v} is outside 0..{H.n_vertices - 1}")
        goal |= 1 << v
    if not goal:
        return 0

    masks = {sum(1 << v for v in vertices) & goal for vertices, _ in H.edges}
    masks.discard(0)
    # Drop edges contained in another edge
    ordered = sorted(masks, key=_popcount, reverse=True)
    kept: List[int] = []
    for mask in ordered:
        if not any(mask | other == other for other in kept):
            kept.append(mask)

    union = 0
    for mask in kept:
        union |= mask
    if union != goal:
        missing = (goal & ~union).bit_length() - 1
        raise InfeasibleError(f"vertex {missing} lies in no edge")

    largest = _popcount(kept[0])
    covering: Dict[int, List[int]] = {}
    for v in range(goal.bit_length()):
        if goal >> v & 1:
            covering[v] = [m for m in kept if m >> v & 1]

    # Greedy upper bound
    best = 0
    uncovered = goal
    while uncovered:
        uncovered &= ~max(kept, key=lambda m: _popcount(m & uncovered))
        best += 1

    def search(uncovered: int, used: int) -> None:
        nonlocal best
        if not uncovered:
            best = min(best, used)
            return
        if used + -(-_popcount(uncovered) // largest) >= best:
            return
        pivot = min(
            (v for v in covering if uncovered >> v & 1),
            key=lambda v: (len(covering[v]), v),
        )
        for mask in sorted(covering[pivot], key=lambda m: -_popcount(m & uncovered)):
            search(uncovered & ~mask, used + 1)

    search(goal, 0)
    return best


def subset_cover_bound(H: MultiHypergraph, S: Iterable[int]) -> Fraction:
    """d(S)/T: instances meeting S over the fewest edges covering S."""
    members = sorted(set(S))
    if not members:
        raise InputError("subset bound needs a non-empty vertex set")
    member_set = set(members)
    incident = sum(1 for inst in H.instances() if member_set & set(H.edge_of(inst)))
    return Fraction(incident, min_cover_size(H, members))


# ----------------------------------------------------------------------
# k-split decision
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class FeasibilityResult:
    status: str
    partition: Optional[CoverPartition] = None
    nodes: int = 0

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE


def components(H: MultiHypergraph) -> List[Tuple[List[int], List[EdgeInstance]]]:
    """Connected components as (vertices, instances), ordered by lowest vertex."""
    graph = nx.Graph()
    graph.add_nodes_from(range(H.n_vertices))
    for vertices, _ in H.edges:
        graph.add_edges_from(zip(vertices, vertices[1:]))
    result = []
    for part in sorted(nx.connected_components(graph), key=min):
        result.append((sorted(part), []))
    owner = {v: i for i, (vertices, _) in enumerate(result) for v in vertices}
    for inst in H.instances():
        vertices = H.edge_of(inst)
        if vertices:
            result[owner[vertices[0]]][1].append(inst)
    return result


class _SplitSearch:
    """Backtracking over class labels for the instances of one component."""

    def __init__(
        self,
        H: MultiHypergraph,
        vertices: Sequence[int],
        instances: Sequence[EdgeInstance],
        k: int,
        counter: _Counter,
    ):
        self.H = H
        self.k = k
        self.counter = counter
        self.vertices = list(vertices)
        # Larger edges first, then index order
        self.order = sorted(instances, key=lambda inst: (-len(H.edge_of(inst)), inst))
        self.rank = {inst: i for i, inst in enumerate(self.order)}
        self.incident = {
            v: sorted(H.incident_instances(v), key=self.rank.__getitem__) for v in vertices
        }
        self.count = {v: [0] * k for v in vertices}
        self.missing = {v: k for v in vertices}
        self.unassigned = {v: len(self.incident[v]) for v in vertices}
        self.labels: Dict[EdgeInstance, int] = {}
        self.opened = 0

    def _assign(self, inst: EdgeInstance, c: int) -> bool:
        self.labels[inst] = c
        ok = True
        for v in self.H.edge_of(inst):
            if self.count[v][c] == 0:
                self.missing[v] -= 1
            self.count[v][c] += 1
            self.unassigned[v] -= 1
            if self.unassigned[v] < self.missing[v]:
                ok = False
        return ok

    def _unassign(self, inst: EdgeInstance) -> None:
        c = self.labels.pop(inst)
        for v in self.H.edge_of(inst):
            self.count[v][c] -= 1
            if self.count[v][c] == 0:
                self.missing[v] += 1
            self.unassigned[v] += 1

    def run(self) -> bool:
        if any(self.unassigned[v] < self.k for v in self.vertices):
            return False
        return self._search()

    def _search(self) -> bool:
        pivot = None
        pivot_slack = 0
        for v in self.vertices:
            if self.missing[v]:
                slack = self.unassigned[v] - self.missing[v]
                if pivot is None or slack < pivot_slack:
                    pivot, pivot_slack = v, slack
        if pivot is None:
            for inst in self.order:
                self.labels.setdefault(inst, 0)
            return True

        inst = next(e for e in self.incident[pivot] if e not in self.labels)
        absent = [c for c in range(self.k) if self.count[pivot][c] == 0]
        candidates = absent if pivot_slack == 0 else absent + [
            c for c in range(self.k) if self.count[pivot][c]
        ]
        limit = min(self.opened, self.k - 1)
        candidates = [c for c in candidates if c <= limit]

        for c in candidates:
            self.counter.tick()
            previous_opened = self.opened
            if c == self.opened:
                self.opened += 1
            if self._assign(inst, c) and self._search():
                return True
            self._unassign(inst)
            self.opened = previous_opened
        return False


def feasible_k(
    H: MultiHypergraph, k: int, limits: Optional[SolverLimits] = None
) -> FeasibilityResult:
    """Decide whether H splits into k covers; feasible answers carry a witness."""
    if k < 1:
        raise InputError(f"k must be positive, got {k}")
    limits = limits or SolverLimits()
    if H.n_vertices and H.min_degree < k:
        return FeasibilityResult(INFEASIBLE)

    counter = _Counter(limits)
    assignment: Dict[EdgeInstance, int] = {inst: 0 for inst in H.instances()}
    for vertices, instances in components(H):
        if not instances:
            continue
        search = _SplitSearch(H, vertices, instances, k, counter)
        try:
            found = search.run()
        except _BudgetExceeded:
            return FeasibilityResult(UNKNOWN, nodes=counter.nodes)
        if not found:
            return FeasibilityResult(INFEASIBLE, nodes=counter.nodes)
        assignment.update(search.labels)

    partition = CoverPartition(k, assignment)
    if not verify_cover_partition(H, partition).valid:
        raise InternalError(f"exact search returned an invalid {k}-split")
    return FeasibilityResult(FEASIBLE, partition, counter.nodes)


@dataclass(frozen=True)
class CoveringNumberResult:
    """Covering number with its certified bracket.

    `value` is set only when status is exact; otherwise the true value lies
    in [lower_bound, upper_bound].
    """

    status: str
    value: Optional[int]
    lower_bound: int
    upper_bound: int
    witness: Optional[CoverPartition] = None
    nodes: int = 0


def covering_number_upper_bound(H: MultiHypergraph) -> int:
    """min(minimum degree, instances // fewest covering edges)."""
    if H.isolated_vertices():
        return 0
    return min(H.min_degree, H.instance_count // min_cover_size(H))


def covering_number_exact(
    H: MultiHypergraph, limits: Optional[SolverLimits] = None
) -> CoveringNumberResult:
    """Largest k for which H splits into k covers.

    A hypergraph with an isolated vertex has covering number 0.
    """
    if H.n_vertices == 0:
        raise InputError("covering number of a hypergraph without vertices is undefined")
    limits = limits or SolverLimits()
    if H.isolated_vertices():
        return CoveringNumberResult(EXACT, 0, 0, 0)

    upper = covering_number_upper_bound(H)
    start = upper if limits.max_k is None else min(upper, limits.max_k)
    highest_unknown: Optional[int] = None
    if start < upper:
        highest_unknown = upper
    nodes = 0

    def settled(k: int, witness: CoverPartition) -> CoveringNumberResult:
        if highest_unknown is None:
            return CoveringNumberResult(EXACT, k, k, k, witness, nodes)
        return CoveringNumberResult(UNKNOWN, None, k, highest_unknown, witness, nodes)

    for k in range(start, 1, -1):
        result = feasible_k(H, k, limits)
        nodes += result.nodes
        if result.status == FEASIBLE:
            return settled(k, result.partition)  # type: ignore[arg-type]
        if result.status == UNKNOWN and highest_unknown is None:
            highest_unknown = k

    # Every vertex lies in an edge, so all instances in one class is a 1-split
    return settled(1, CoverPartition(1, {inst: 0 for inst in H.instances()}))


# ----------------------------------------------------------------------
# Dual search: polychromatic vertex colourings
# ----------------------------------------------------------------------


def has_polychromatic_colouring(
    D: MultiHypergraph, k: int, limits: Optional[SolverLimits] = None
) -> Optional[Tuple[int, ...]]:
    """A k-colouring of D's vertices with every colour on every edge, or None.

    Vertices are coloured in index order; an edge prunes once its uncoloured
    vertices cannot supply its missing colours.
    """
    if k < 1:
        raise InputError(f"k must be positive, got {k}")
    counter = _Counter(limits or SolverLimits())
    edges = [vertices for vertices, _ in D.edges]
    at_vertex: List[List[int]] = [[] for _ in range(D.n_vertices)]
    for i, vertices in enumerate(edges):
        for v in vertices:
            at_vertex[v].append(i)
    present = [[0] * k for _ in edges]
    missing = [k] * len(edges)
    uncoloured = [len(vertices) for vertices in edges]
    if any(u < k for u in uncoloured):
        return None
    colouring = [0] * D.n_vertices

    def place(v: int, c: int, sign: int) -> bool:
        ok = True
        for i in at_vertex[v]:
            if sign > 0:
                if present[i][c] == 0:
                    missing[i] -= 1
                present[i][c] += 1
                uncoloured[i] -= 1
            else:
                present[i][c] -= 1
                if present[i][c] == 0:
                    missing[i] += 1
                uncoloured[i] += 1
            if uncoloured[i] < missing[i]:
                ok = False
        return ok

    def search(v: int, opened: int) -> bool:
        if v == D.n_vertices:
            return all(m == 0 for m in missing)
        for c in range(min(opened + 1, k)):
            counter.tick()
            colouring[v] = c
            if place(v, c, 1) and search(v + 1, max(opened, c + 1)):
                return True
            place(v, c, -1)
        return False

    try:
        found = search(0, 0)
    except _BudgetExceeded:
        raise BudgetExhaustedError(
            f"polychromatic search exceeded its budget at k={k} after {counter.nodes} nodes"
        ) from None
    return tuple(colouring) if found else None


def max_polychromatic_colours(D: MultiHypergraph, limits: Optional[SolverLimits] = None) -> int:
    """Most colours a vertex colouring of D can put on every edge.

    Raises BudgetExhaustedError when some k cannot be settled within `limits`.
    """
    if not D.edges:
        raise InputError("every colouring of a hypergraph without edges is polychromatic")
    for k in range(min(D.edge_sizes), 0, -1):
        if has_polychromatic_colouring(D, k, limits) is not None:
            return k
    return 0
