"""Hypergraph data model, cover partitions, the cover verifier and dualization.

Vertices are dense 0-based indices. An edge is a strictly increasing tuple of
vertices stored together with a positive multiplicity; the individual copies
of an edge are addressed by `EdgeInstance(edge_index, copy_index)`.
"""

from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from hypercover.errors import InputError, UnsupportedInputError

Edge = Tuple[int, ...]


class EdgeInstance(NamedTuple):
    """One copy of a (possibly repeated) edge."""

    edge_index: int
    copy_index: int


@dataclass(frozen=True)
class MultiHypergraph:
    """A vertex count plus an ordered list of (vertex tuple, multiplicity) edges.

    Attributes:
        n_vertices: Number of vertices; vertices are 0..n_vertices-1
        edges: Ordered edges as (strictly increasing vertex tuple, multiplicity)
        r_cap: Optional maximum edge size
    """

    n_vertices: int
    edges: Tuple[Tuple[Edge, int], ...] = ()
    r_cap: Optional[int] = None

    def __post_init__(self) -> None:
        if self.n_vertices < 0:
            raise InputError(f"vertex count must be non-negative, got {self.n_vertices}")
        normalized = tuple((tuple(int(v) for v in vs), int(m)) for vs, m in self.edges)
        object.__setattr__(self, "edges", normalized)

        for index, (vertices, multiplicity) in enumerate(normalized):
            if multiplicity < 1:
                raise InputError(f"edge {index} has multiplicity {multiplicity} < 1")
            for a, b in zip(vertices, vertices[1:]):
                if a >= b:
                    raise InputError(f"edge {index} vertices are not strictly increasing")
            if vertices and (vertices[0] < 0 or vertices[-1] >= self.n_vertices):
                raise InputError(
                    f"edge {index} has a vertex outside 0..{self.n_vertices - 1}"
                )
            if self.r_cap is not None and len(vertices) > self.r_cap:
                raise InputError(f"edge {index} has size {len(vertices)} > r_cap {self.r_cap}")

    @classmethod
    def from_edges(
        cls,
        n_vertices: int,
        edges: Iterable[Iterable[int]],
        multiplicities: Optional[Sequence[int]] = None,
        r_cap: Optional[int] = None,
    ) -> "MultiHypergraph":
        """Build from unsorted vertex collections (repeated vertices are an error)."""
        edge_list = []
        for index, vs in enumerate(edges):
            vertices = tuple(sorted(int(v) for v in vs))
            if len(set(vertices)) != len(vertices):
                raise InputError(f"edge {index} repeats a vertex")
            multiplicity = 1 if multiplicities is None else int(multiplicities[index])
            edge_list.append((vertices, multiplicity))
        return cls(n_vertices, tuple(edge_list), r_cap)

    # ------------------------------------------------------------------
    # Instances and incidence
    # ------------------------------------------------------------------

    @cached_property
    def _instances(self) -> Tuple[EdgeInstance, ...]:
        return tuple(
            EdgeInstance(e, c) for e, (_, m) in enumerate(self.edges) for c in range(m)
        )

    def instances(self) -> Tuple[EdgeInstance, ...]:
        """All edge instances in (edge_index, copy_index) order."""
        return self._instances

    @property
    def instance_count(self) -> int:
        return len(self._instances)

    def edge_of(self, instance: EdgeInstance) -> Edge:
        """Vertex tuple of the edge an instance belongs to."""
        return self.edges[instance.edge_index][0]

    def has_instance(self, instance: EdgeInstance) -> bool:
        e, c = instance
        return 0 <= e < len(self.edges) and 0 <= c < self.edges[e][1]

    @cached_property
    def _incidence(self) -> Tuple[Tuple[EdgeInstance, ...], ...]:
        incident: List[List[EdgeInstance]] = [[] for _ in range(self.n_vertices)]
        for inst in self._instances:
            for v in self.edge_of(inst):
                incident[v].append(inst)
        return tuple(tuple(lst) for lst in incident)

    def incident_instances(self, v: int) -> Tuple[EdgeInstance, ...]:
        """Instances containing vertex v, in instance order."""
        self._check_vertex(v)
        return self._incidence[v]

    # ------------------------------------------------------------------
    # Degree and size queries
    # ------------------------------------------------------------------

    @cached_property
    def _degrees(self) -> np.ndarray:
        degrees = np.zeros(self.n_vertices, dtype=np.int64)
        for vertices, multiplicity in self.edges:
            if vertices:
                degrees[list(vertices)] += multiplicity
        degrees.setflags(write=False)
        return degrees

    def degrees(self) -> np.ndarray:
        """Read-only degree vector (multiplicities counted)."""
        return self._degrees

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return int(self._degrees[v])

    @property
    def min_degree(self) -> int:
        return int(self._degrees.min()) if self.n_vertices else 0

    @property
    def max_degree(self) -> int:
        return int(self._degrees.max()) if self.n_vertices else 0

    @property
    def edge_sizes(self) -> Tuple[int, ...]:
        return tuple(len(vs) for vs, _ in self.edges)

    @property
    def max_edge_size(self) -> int:
        return max(self.edge_sizes, default=0)

    @property
    def total_weight(self) -> int:
        """Sum of multiplicities (the number of edge instances)."""
        return sum(m for _, m in self.edges)

    @property
    def uniformity(self) -> Optional[int]:
        """Common edge size, or None if sizes differ (or there are no edges)."""
        sizes = set(self.edge_sizes)
        return sizes.pop() if len(sizes) == 1 else None

    @property
    def regularity(self) -> Optional[int]:
        """Common vertex degree, or None if degrees differ (or there are no vertices)."""
        if self.n_vertices == 0:
            return None
        return self.min_degree if self.min_degree == self.max_degree else None

    def is_uniform(self, r: int) -> bool:
        return all(size == r for size in self.edge_sizes)

    def is_regular(self, d: int) -> bool:
        return bool(np.all(self._degrees == d))

    def is_simple(self) -> bool:
        """All multiplicities 1 and pairwise-distinct vertex sets."""
        if any(m != 1 for _, m in self.edges):
            return False
        return len({vs for vs, _ in self.edges}) == len(self.edges)

    def has_unit_multiplicities(self) -> bool:
        return all(m == 1 for _, m in self.edges)

    def is_graph(self) -> bool:
        """True if every edge has exactly two vertices."""
        return all(size == 2 for size in self.edge_sizes)

    def isolated_vertices(self) -> Tuple[int, ...]:
        return tuple(int(v) for v in np.flatnonzero(self._degrees == 0))

    # ------------------------------------------------------------------
    # Derived hypergraphs
    # ------------------------------------------------------------------

    def canonical(self) -> "MultiHypergraph":
        """Same hypergraph with edges sorted by (vertex tuple, multiplicity)."""
        return MultiHypergraph(self.n_vertices, tuple(sorted(self.edges)), self.r_cap)

    def with_unit_multiplicities(self) -> Tuple["MultiHypergraph", Tuple[EdgeInstance, ...]]:
        """One edge per instance; returns the new hypergraph and, per new edge, its source."""
        return self.sub_hypergraph(self._instances)

    def sub_hypergraph(
        self, instances: Iterable[EdgeInstance]
    ) -> Tuple["MultiHypergraph", Tuple[EdgeInstance, ...]]:
        """Keep the vertex set and one unit edge per selected instance.

        Returns the sub-hypergraph and the provenance tuple: new edge j
        (copy 0) came from provenance[j].
        """
        provenance = tuple(instances)
        edges = tuple((self.edge_of(inst), 1) for inst in provenance)
        return MultiHypergraph(self.n_vertices, edges, self.r_cap), provenance

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n_vertices:
            raise InputError(f"vertex {v} is outside 0..{self.n_vertices - 1}")


def degree(H: MultiHypergraph, v: int) -> int:
    """Sum of multiplicities of the edges containing v."""
    return H.degree(v)


@dataclass(frozen=True)
class CoverPartition:
    """Assignment of every edge instance to one of k classes."""

    k: int
    assignment: Mapping[EdgeInstance, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.k < 1:
            raise InputError(f"class count must be positive, got {self.k}")
        frozen = {EdgeInstance(*inst): int(c) for inst, c in self.assignment.items()}
        for inst, c in frozen.items():
            if not 0 <= c < self.k:
                raise InputError(f"instance {tuple(inst)} has class {c} outside 0..{self.k - 1}")
        object.__setattr__(self, "assignment", MappingProxyType(frozen))

    @classmethod
    def from_classes(
        cls, k: int, classes: Sequence[Iterable[Tuple[int, int]]]
    ) -> "CoverPartition":
        """Build from per-class instance lists; an instance may appear only once."""
        if len(classes) != k:
            raise InputError(f"expected {k} classes, got {len(classes)}")
        assignment: Dict[EdgeInstance, int] = {}
        for c, members in enumerate(classes):
            for inst in members:
                key = EdgeInstance(*inst)
                if key in assignment:
                    raise InputError(f"instance {tuple(key)} appears in more than one class")
                assignment[key] = c
        return cls(k, assignment)

    @classmethod
    def from_labels(
        cls, H: MultiHypergraph, labels: Sequence[int], k: int
    ) -> "CoverPartition":
        """Build from one label per instance, in `H.instances()` order."""
        instances = H.instances()
        if len(labels) != len(instances):
            raise InputError(f"expected {len(instances)} labels, got {len(labels)}")
        return cls(k, {inst: int(c) for inst, c in zip(instances, labels)})

    def class_of(self, instance: EdgeInstance) -> int:
        return self.assignment[instance]

    def classes(self) -> List[List[EdgeInstance]]:
        """Per-class instance lists, each sorted."""
        result: List[List[EdgeInstance]] = [[] for _ in range(self.k)]
        for inst, c in sorted(self.assignment.items()):
            result[c].append(inst)
        return result

    def class_sizes(self) -> List[int]:
        return [len(members) for members in self.classes()]

    def check_total(self, H: MultiHypergraph) -> None:
        """Raise InputError unless every instance of H is assigned exactly once."""
        expected = set(H.instances())
        actual = set(self.assignment)
        missing = expected - actual
        if missing:
            first = min(missing)
            raise InputError(
                f"partial assignment: {len(missing)} instance(s) unassigned, e.g. {tuple(first)}"
            )
        extra = actual - expected
        if extra:
            raise InputError(f"assignment names unknown instance {tuple(min(extra))}")


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of `verify_cover_partition`; witness is (class, vertex) on failure."""

    valid: bool
    witness: Optional[Tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.valid


def verify_cover_partition(H: MultiHypergraph, P: CoverPartition) -> VerificationResult:
    """Check that every class of P covers every vertex of H.

    The first failure is reported in (class, vertex) order. A class whose
    only instances are empty edges covers nothing.
    """
    P.check_total(H)
    if H.n_vertices == 0:
        return VerificationResult(True)

    covered = np.zeros((P.k, H.n_vertices), dtype=bool)
    for inst, c in P.assignment.items():
        vertices = H.edge_of(inst)
        if vertices:
            covered[c, list(vertices)] = True

    for c in range(P.k):
        uncovered = np.flatnonzero(~covered[c])
        if uncovered.size:
            return VerificationResult(False, (c, int(uncovered[0])))
    return VerificationResult(True)


def dualize(H: MultiHypergraph) -> MultiHypergraph:
    """Dual hypergraph: vertices are H's edges, edge j is the set of edges at vertex j."""
    if not H.has_unit_multiplicities():
        raise UnsupportedInputError(
            "dualize needs unit multiplicities; expand copies with with_unit_multiplicities()"
        )
    if H.isolated_vertices():
        raise InputError(f"isolated vertex {H.isolated_vertices()[0]} has an empty dual edge")
    if any(size == 0 for size in H.edge_sizes):
        raise InputError("empty edges have no dual incidence")

    dual_edges = tuple(
        (tuple(inst.edge_index for inst in H.incident_instances(v)), 1)
        for v in range(H.n_vertices)
    )
    return MultiHypergraph(len(H.edges), dual_edges)


def induced_dual_colouring(H: MultiHypergraph, P: CoverPartition) -> Tuple[int, ...]:
    """Vertex colouring of dualize(H) induced by P (dual vertex i = edge i of H)."""
    if not H.has_unit_multiplicities():
        raise UnsupportedInputError("induced dual colouring needs unit multiplicities")
    P.check_total(H)
    return tuple(P.class_of(EdgeInstance(e, 0)) for e in range(len(H.edges)))


def is_polychromatic(H: MultiHypergraph, colouring: Sequence[int], k: int) -> bool:
    """True if every edge of H contains a vertex of each of the k colours."""
    if len(colouring) != H.n_vertices:
        raise InputError(f"colouring has {len(colouring)} entries for {H.n_vertices} vertices")
    full = set(range(k))
    return all({colouring[v] for v in vertices} >= full for vertices, _ in H.edges)
