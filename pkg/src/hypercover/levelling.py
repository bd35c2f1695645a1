"""(r,d)-levellings: reduce an arbitrary hypergraph to a regular uniform one.

A levelling of H0 is an r-uniform d-regular H1 that contains V0, together
with an injective edge map f such that f(e) meets V0 only inside e and every
edge of H1 meeting V0 is an image. A cover partition of H1 then pulls back
to one of H0.
"""

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, List, Mapping, NamedTuple, Tuple, TypeVar

from hypercover.errors import InfeasibleError, InputError, InternalError, VerificationError
from hypercover.hypergraph import (
    CoverPartition,
    EdgeInstance,
    MultiHypergraph,
    verify_cover_partition,
)

T = TypeVar("T")


class Trimmed(NamedTuple):
    """Output of `trim_to_degree`: provenance maps output instances to input instances."""

    hypergraph: MultiHypergraph
    provenance: Mapping[EdgeInstance, EdgeInstance]


def trim_to_degree(H: MultiHypergraph, d: int) -> Trimmed:
    """Delete vertices from edges until every vertex has degree exactly d.

    Vertices are processed in increasing order; a vertex of degree d+x leaves
    its x incident instances with the largest (edge_index, copy_index).
    Copies of one edge that end up with the same vertex set stay grouped as
    one edge with a multiplicity.
    """
    if d < 1:
        raise InputError(f"target degree must be positive, got {d}")
    if H.n_vertices and H.min_degree < d:
        raise InfeasibleError(f"minimum degree {H.min_degree} is below the target degree {d}")

    removed: Dict[EdgeInstance, set] = {}
    for v in range(H.n_vertices):
        incident = H.incident_instances(v)
        excess = len(incident) - d
        for inst in incident[len(incident) - excess :] if excess > 0 else ():
            removed.setdefault(inst, set()).add(v)

    edges: List[Tuple[Tuple[int, ...], int]] = []
    provenance: Dict[EdgeInstance, EdgeInstance] = {}
    for e, (vertices, multiplicity) in enumerate(H.edges):
        groups: Dict[Tuple[int, ...], List[int]] = {}
        for c in range(multiplicity):
            dropped = removed.get(EdgeInstance(e, c), ())
            kept = tuple(v for v in vertices if v not in dropped)
            groups.setdefault(kept, []).append(c)
        for kept, copies in groups.items():
            out_index = len(edges)
            edges.append((kept, len(copies)))
            for j, c in enumerate(copies):
                provenance[EdgeInstance(out_index, j)] = EdgeInstance(e, c)

    trimmed = MultiHypergraph(H.n_vertices, tuple(edges))
    return Trimmed(trimmed, MappingProxyType(provenance))


@dataclass(frozen=True)
class LevellingMap:
    """A levelling of `source` into `target`.

    Attributes:
        source: The original hypergraph H0
        target: The r-uniform d-regular hypergraph H1
        edge_map: Injective map from source instances to target instances
        embedded: embedded[v] is the index of source vertex v inside the target
    """

    source: MultiHypergraph
    target: MultiHypergraph
    edge_map: Mapping[EdgeInstance, EdgeInstance] = field(default_factory=dict)
    embedded: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "edge_map", MappingProxyType(dict(self.edge_map)))
        object.__setattr__(self, "embedded", tuple(self.embedded))

    @property
    def is_identity(self) -> bool:
        return self.source is self.target


def level(H: MultiHypergraph, r: int, d: int) -> LevellingMap:
    """Build an (r,d)-levelling of H.

    Trim to degree d, take d disjoint copies of the trimmed hypergraph and pad
    every edge e with r-|e| new vertices shared by the d copies of e. Copy 0
    holds the embedded source vertices. A simple, d-regular, r-uniform input
    is returned with the identity map.
    """
    if r < 0:
        raise InputError(f"edge size must be non-negative, got {r}")
    if d < 1:
        raise InputError(f"target degree must be positive, got {d}")
    if H.n_vertices and H.min_degree < d:
        raise InfeasibleError(f"minimum degree {H.min_degree} is below the target degree {d}")
    if H.max_edge_size > r:
        raise InfeasibleError(f"an edge of size {H.max_edge_size} exceeds r={r}")

    if H.is_simple() and H.is_regular(d) and H.is_uniform(r):
        identity = {inst: inst for inst in H.instances()}
        return LevellingMap(H, H, identity, tuple(range(H.n_vertices)))

    trimmed, provenance = trim_to_degree(H, d)
    trimmed_instances = trimmed.instances()
    n = H.n_vertices

    # Padding vertices come after the d copies of V0, grouped per trimmed edge
    pads: List[Tuple[int, ...]] = []
    next_vertex = d * n
    for inst in trimmed_instances:
        width = r - len(trimmed.edge_of(inst))
        pads.append(tuple(range(next_vertex, next_vertex + width)))
        next_vertex += width

    edges = []
    for copy in range(d):
        offset = copy * n
        for j, inst in enumerate(trimmed_instances):
            vertices = tuple(offset + v for v in trimmed.edge_of(inst)) + pads[j]
            edges.append((vertices, 1))
    target = MultiHypergraph(next_vertex, tuple(edges))

    position = {inst: j for j, inst in enumerate(trimmed_instances)}
    edge_map = {
        source_inst: EdgeInstance(position[out_inst], 0)
        for out_inst, source_inst in provenance.items()
    }
    return LevellingMap(H, target, edge_map, tuple(range(n)))


def levelling_violations(L: LevellingMap, r: int, d: int) -> List[str]:
    """Every definitional condition of an (r,d)-levelling that L fails."""
    problems: List[str] = []
    source, target = L.source, L.target

    if source.max_edge_size > r:
        problems.append(f"source has an edge larger than r={r}")
    if source.n_vertices and source.min_degree < d:
        problems.append(f"source minimum degree {source.min_degree} < d={d}")
    if not target.is_uniform(r):
        problems.append(f"target is not {r}-uniform")
    if not target.is_regular(d):
        problems.append(f"target is not {d}-regular")

    embedded = L.embedded
    if len(embedded) != source.n_vertices:
        problems.append("embedding does not cover every source vertex")
        return problems
    if len(set(embedded)) != len(embedded):
        problems.append("embedding is not injective")
    if any(not 0 <= w < target.n_vertices for w in embedded):
        problems.append("embedding leaves the target vertex range")
        return problems

    source_instances = set(source.instances())
    if set(L.edge_map) != source_instances:
        problems.append("edge map is not total on source instances")
    images = list(L.edge_map.values())
    if len(set(images)) != len(images):
        problems.append("edge map is not injective")
    if any(not target.has_instance(t) for t in images):
        problems.append("edge map names an instance missing from the target")
        return problems

    position = {w: v for v, w in enumerate(embedded)}
    for src, tgt in sorted(L.edge_map.items()):
        inside = {position[w] for w in target.edge_of(tgt) if w in position}
        if not inside <= set(source.edge_of(src)):
            problems.append(f"image of {tuple(src)} meets V0 outside the source edge")
            break

    image_set = set(images)
    for inst in target.instances():
        if inst not in image_set and any(w in position for w in target.edge_of(inst)):
            problems.append(f"target instance {tuple(inst)} meets V0 but is not an image")
            break
    return problems


def is_levelling(L: LevellingMap, r: int, d: int) -> bool:
    """True iff L satisfies every condition of an (r,d)-levelling."""
    return not levelling_violations(L, r, d)


def pull_back_assignment(
    L: LevellingMap, assignment: Mapping[EdgeInstance, T]
) -> Dict[EdgeInstance, T]:
    """Give every source instance the value of its image."""
    try:
        return {src: assignment[tgt] for src, tgt in L.edge_map.items()}
    except KeyError as e:
        raise InternalError(f"target instance {e.args[0]} has no assigned value") from None


def pull_back(L: LevellingMap, P: CoverPartition) -> CoverPartition:
    """Induce a cover partition of L.source from a valid one of L.target."""
    result = verify_cover_partition(L.target, P)
    if not result.valid:
        c, v = result.witness  # type: ignore[misc]
        raise VerificationError(
            f"partition is not valid on the target: class {c} misses {v}", (c, v)
        )
    return CoverPartition(P.k, pull_back_assignment(L, P.assignment))
