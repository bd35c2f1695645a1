"""Edge colourings used by the graph cover pipelines.

`vizing_edge_colour` is the Misra-Gries fan / alternating-path algorithm and
uses at most Delta+1 colours on a simple graph. `spread_colour_bipartite`
splits high-degree vertices into degree-k pieces, colours the pieces
properly with k colours (alternating-path recolouring, valid because the
graph is bipartite) and reunites them.
"""

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx

from hypercover.errors import InputError, InternalError, UnsupportedInputError
from hypercover.hypergraph import EdgeInstance, MultiHypergraph


@dataclass(frozen=True)
class EdgeColouring:
    """Colour per edge instance, drawn from range(palette_size)."""

    colours: Mapping[EdgeInstance, int] = field(default_factory=dict)
    palette_size: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "colours", MappingProxyType(dict(self.colours)))

    @property
    def colours_used(self) -> int:
        return len(set(self.colours.values()))

    def colours_seen(self, H: MultiHypergraph, v: int) -> Set[int]:
        return {self.colours[inst] for inst in H.incident_instances(v)}

    def is_proper(self, H: MultiHypergraph) -> bool:
        """No two instances sharing a vertex share a colour."""
        return all(
            len(self.colours_seen(H, v)) == H.degree(v) for v in range(H.n_vertices)
        )

    def is_spreading(self, H: MultiHypergraph, k: int) -> bool:
        """Every vertex sees at least min(k, degree) distinct colours."""
        return all(
            len(self.colours_seen(H, v)) >= min(k, H.degree(v)) for v in range(H.n_vertices)
        )


def _require_graph(G: MultiHypergraph, operation: str) -> None:
    if not G.is_graph():
        raise UnsupportedInputError(f"{operation} needs a graph (every edge of size 2)")


class _FanColourer:
    """Mutable colouring state for the Misra-Gries algorithm."""

    def __init__(self, n_vertices: int):
        self.at: List[Dict[int, int]] = [{} for _ in range(n_vertices)]
        self.colour: Dict[Tuple[int, int], int] = {}

    @staticmethod
    def _key(u: int, v: int) -> Tuple[int, int]:
        return (u, v) if u < v else (v, u)

    def get(self, u: int, v: int) -> Optional[int]:
        return self.colour.get(self._key(u, v))

    def clear(self, u: int, v: int) -> None:
        old = self.colour.pop(self._key(u, v), None)
        if old is not None:
            del self.at[u][old]
            del self.at[v][old]

    def set(self, u: int, v: int, c: int) -> None:
        self.clear(u, v)
        if c in self.at[u] or c in self.at[v]:
            raise InternalError(f"colour {c} is not free on edge ({u}, {v})")
        self.colour[self._key(u, v)] = c
        self.at[u][c] = v
        self.at[v][c] = u

    def free(self, v: int, palette: int) -> int:
        for c in range(palette):
            if c not in self.at[v]:
                return c
        raise InternalError(f"no free colour at vertex {v}")

    def maximal_fan(self, u: int, v: int) -> List[int]:
        fan = [v]
        in_fan = {v}
        while True:
            last = fan[-1]
            extension = None
            for c, x in sorted(self.at[u].items()):
                if x not in in_fan and c not in self.at[last]:
                    extension = x
                    break
            if extension is None:
                return fan
            fan.append(extension)
            in_fan.add(extension)

    def invert_path(self, u: int, c: int, d: int) -> None:
        """Swap c and d along the maximal d/c alternating path starting at u."""
        path = []
        x, col = u, d
        while col in self.at[x]:
            y = self.at[x][col]
            path.append((x, y, col))
            x, col = y, (c if col == d else d)
        for x, y, _ in path:
            self.clear(x, y)
        for x, y, col in path:
            self.set(x, y, d if col == c else c)

    def colour_edge(self, u: int, v: int, palette: int) -> None:
        fan = self.maximal_fan(u, v)
        c = self.free(u, palette)
        d = self.free(fan[-1], palette)
        self.invert_path(u, c, d)

        w = None
        for i, x in enumerate(fan):
            if i > 0:
                col = self.get(u, x)
                if col is None or col in self.at[fan[i - 1]]:
                    break
            if d not in self.at[x]:
                w = i
                break
        if w is None:
            raise InternalError(f"no foldable fan prefix for edge ({u}, {v})")

        for i in range(w):
            shifted = self.get(u, fan[i + 1])
            self.clear(u, fan[i + 1])
            self.set(u, fan[i], shifted)  # type: ignore[arg-type]
        self.set(u, fan[w], d)


def vizing_edge_colour(G: MultiHypergraph) -> EdgeColouring:
    """Proper edge colouring of a simple graph with at most Delta+1 colours."""
    _require_graph(G, "vizing_edge_colour")
    if not G.is_simple():
        raise UnsupportedInputError("vizing_edge_colour needs a simple graph (no repeated edges)")

    palette = G.max_degree + 1
    state = _FanColourer(G.n_vertices)
    for vertices, _ in G.edges:
        u, v = vertices
        state.colour_edge(u, v, palette)

    colours = {
        EdgeInstance(e, 0): state.get(*vertices) for e, (vertices, _) in enumerate(G.edges)
    }
    return EdgeColouring(colours, palette)  # type: ignore[arg-type]


def bipartition_sides(G: MultiHypergraph) -> Tuple[int, ...]:
    """A 0/1 side per vertex making every edge cross, or InputError."""
    _require_graph(G, "bipartition_sides")
    graph = nx.Graph()
    graph.add_nodes_from(range(G.n_vertices))
    graph.add_edges_from(vertices for vertices, _ in G.edges)
    if not nx.is_bipartite(graph):
        raise InputError("graph is not bipartite")
    colouring = nx.bipartite.color(graph)
    return tuple(colouring[v] for v in range(G.n_vertices))


def spread_colour_bipartite(
    B: MultiHypergraph, k: int, sides: Optional[Sequence[int]] = None
) -> EdgeColouring:
    """Colour B with k colours so each vertex sees min(k, degree) colours."""
    _require_graph(B, "spread_colour_bipartite")
    if k < 1:
        raise InputError(f"colour count must be positive, got {k}")
    if sides is None:
        sides = bipartition_sides(B)
    elif any(sides[u] == sides[v] for (u, v), _ in B.edges):
        raise InputError("given sides do not make the graph bipartite")

    # Split each vertex into pieces of at most k consecutive incident instances
    piece_of: Dict[Tuple[int, EdgeInstance], int] = {}
    n_pieces = 0
    for v in range(B.n_vertices):
        for i, inst in enumerate(B.incident_instances(v)):
            if i % k == 0:
                n_pieces += 1
            piece_of[(v, inst)] = n_pieces - 1

    at: List[Dict[int, EdgeInstance]] = [{} for _ in range(n_pieces)]
    colours: Dict[EdgeInstance, int] = {}
    ends: Dict[EdgeInstance, Tuple[int, int]] = {}

    def free(piece: int) -> int:
        for c in range(k):
            if c not in at[piece]:
                return c
        raise InternalError(f"piece {piece} has no free colour")

    def other(inst: EdgeInstance, piece: int) -> int:
        a, b = ends[inst]
        return b if piece == a else a

    for inst in B.instances():
        u, v = B.edge_of(inst)
        a, b = piece_of[(u, inst)], piece_of[(v, inst)]
        ends[inst] = (a, b)
        alpha, beta = free(a), free(b)
        if alpha in at[b]:
            path = []
            x, col = b, alpha
            while col in at[x]:
                step = at[x][col]
                path.append(step)
                x, col = other(step, x), (beta if col == alpha else alpha)
            for step in path:
                p, q = ends[step]
                del at[p][colours[step]]
                del at[q][colours[step]]
            for step in path:
                p, q = ends[step]
                swapped = beta if colours[step] == alpha else alpha
                colours[step] = swapped
                at[p][swapped] = step
                at[q][swapped] = step
            if alpha in at[b] or alpha in at[a]:
                raise InternalError("alternating path reached both ends of a bipartite edge")
        colours[inst] = alpha
        at[a][alpha] = inst
        at[b][alpha] = inst

    return EdgeColouring(colours, k)
