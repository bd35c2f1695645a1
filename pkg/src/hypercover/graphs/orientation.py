"""Vertex bipartitions and edge orientations of multigraphs."""

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, List, Mapping, Tuple

import networkx as nx

from hypercover.errors import InternalError, UnsupportedInputError
from hypercover.hypergraph import EdgeInstance, MultiHypergraph


def _require_graph(G: MultiHypergraph) -> None:
    if not G.is_graph():
        raise UnsupportedInputError("orientation routines need a graph (every edge of size 2)")


@dataclass(frozen=True)
class Bipartition:
    """Side (0 or 1) of every vertex."""

    sides: Tuple[int, ...]

    def side(self, side: int) -> Tuple[int, ...]:
        return tuple(v for v, s in enumerate(self.sides) if s == side)

    def is_cross(self, G: MultiHypergraph, inst: EdgeInstance) -> bool:
        u, v = G.edge_of(inst)
        return self.sides[u] != self.sides[v]

    def cross_degree(self, G: MultiHypergraph, v: int) -> int:
        return sum(1 for inst in G.incident_instances(v) if self.is_cross(G, inst))


def max_cut_local(G: MultiHypergraph) -> Bipartition:
    """Locally maximal cut by single-vertex flips.

    Every vertex starts on side 0; while some vertex has fewer than half of
    its edges crossing, the lowest such vertex is flipped. Each flip grows
    the cut, so the loop terminates with cross_degree(v) >= ceil(deg(v)/2).
    """
    _require_graph(G)
    sides = [0] * G.n_vertices
    neighbours: List[List[int]] = [[] for _ in range(G.n_vertices)]
    for inst in G.instances():
        u, v = G.edge_of(inst)
        neighbours[u].append(v)
        neighbours[v].append(u)

    improved = True
    while improved:
        improved = False
        for v in range(G.n_vertices):
            cross = sum(1 for w in neighbours[v] if sides[w] != sides[v])
            if 2 * cross < len(neighbours[v]):
                sides[v] ^= 1
                improved = True
                break
    return Bipartition(tuple(sides))


@dataclass(frozen=True)
class Orientation:
    """(tail, head) for every oriented edge instance."""

    directions: Mapping[EdgeInstance, Tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "directions", MappingProxyType(dict(self.directions)))
        for inst, (tail, head) in self.directions.items():
            if tail == head:
                raise InternalError(f"instance {tuple(inst)} is oriented as a loop")

    def outdegree(self, v: int) -> int:
        return sum(1 for tail, _ in self.directions.values() if tail == v)

    def out_instances(self, v: int) -> List[EdgeInstance]:
        """Instances with tail v, sorted."""
        return sorted(inst for inst, (tail, _) in self.directions.items() if tail == v)

    def in_instances(self, v: int) -> List[EdgeInstance]:
        return sorted(inst for inst, (_, head) in self.directions.items() if head == v)


def orient_outdeg_half(G: MultiHypergraph) -> Orientation:
    """Orient G so every vertex has outdegree at least floor(deg/2).

    Odd-degree vertices are paired in increasing order by auxiliary edges,
    an Euler circuit of every component is followed (starting from its
    lowest vertex) and the auxiliary edges are dropped again.
    """
    _require_graph(G)
    graph = nx.MultiGraph()
    graph.add_nodes_from(range(G.n_vertices))
    for inst in G.instances():
        u, v = G.edge_of(inst)
        graph.add_edge(u, v, key=inst)

    odd = [v for v in range(G.n_vertices) if G.degree(v) % 2 == 1]
    for i in range(0, len(odd), 2):
        graph.add_edge(odd[i], odd[i + 1], key=("aux", i // 2))

    directions: Dict[EdgeInstance, Tuple[int, int]] = {}
    for component in sorted(nx.connected_components(graph), key=min):
        if len(component) < 2:
            continue
        sub = graph.subgraph(component)
        for tail, head, key in nx.eulerian_circuit(sub, source=min(component), keys=True):
            if isinstance(key, EdgeInstance):
                directions[key] = (tail, head)

    if len(directions) != G.instance_count:
        raise InternalError("Euler walk missed an edge instance")
    return Orientation(directions)
