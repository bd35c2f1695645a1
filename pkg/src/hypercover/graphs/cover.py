"""Constructive cover splitters for graphs, multigraphs and hypergraphs.

Every function here returns a `CoverPartition` that passes
`verify_cover_partition`; a failure of that check is an `InternalError`.
"""

from typing import Callable, Dict, List, Optional, Tuple

import networkx as nx

from hypercover.errors import InfeasibleError, InputError, InternalError, UnsupportedInputError
from hypercover.graphs.colouring import spread_colour_bipartite, vizing_edge_colour
from hypercover.graphs.orientation import max_cut_local, orient_outdeg_half
from hypercover.hypergraph import (
    CoverPartition,
    EdgeInstance,
    MultiHypergraph,
    verify_cover_partition,
)
from hypercover.levelling import level, pull_back, trim_to_degree
from hypercover.utils import log_debug

SimpleSolver = Callable[[MultiHypergraph], CoverPartition]

# Minimum degree forcing a 2-split of a simple r-uniform hypergraph
TWO_SPLIT_DEGREE: Dict[int, int] = {2: 3, 3: 4, 4: 4}


def _checked(H: MultiHypergraph, P: CoverPartition, algorithm: str) -> CoverPartition:
    result = verify_cover_partition(H, P)
    if not result.valid:
        raise InternalError(f"{algorithm} produced an invalid partition (witness {result.witness})")
    return P


def _strip_vanishing(
    H: MultiHypergraph, d: int
) -> Tuple[MultiHypergraph, Tuple[EdgeInstance, ...], List[EdgeInstance]]:
    """Drop the instances that trimming to degree d would empty.

    Each endpoint of such an instance keeps degree >= d without it, and a
    levelling of the rest stays simple. Returns the reduced hypergraph, its
    provenance and the stripped source instances.
    """
    trimmed, provenance = trim_to_degree(H, d)
    vanishing = {provenance[inst] for inst in trimmed.instances() if not trimmed.edge_of(inst)}
    kept = [inst for inst in H.instances() if inst not in vanishing]
    reduced, reduced_provenance = H.sub_hypergraph(kept)
    return reduced, reduced_provenance, sorted(vanishing)


def _empty_partition(H: MultiHypergraph, k: int) -> CoverPartition:
    return CoverPartition(k, {inst: 0 for inst in H.instances()})


# ----------------------------------------------------------------------
# Simple graphs: delta >= k+1
# ----------------------------------------------------------------------


def _orient_paths_and_cycles(
    edges: List[Tuple[EdgeInstance, int, int]]
) -> Dict[EdgeInstance, Tuple[int, int]]:
    """Direct a max-degree-2 edge set so every path and cycle is a directed walk."""
    adjacency: Dict[int, List[Tuple[EdgeInstance, int]]] = {}
    for inst, u, v in edges:
        adjacency.setdefault(u, []).append((inst, v))
        adjacency.setdefault(v, []).append((inst, u))

    directions: Dict[EdgeInstance, Tuple[int, int]] = {}
    ends = sorted(v for v, incident in adjacency.items() if len(incident) == 1)
    starts = ends + sorted(adjacency)
    for start in starts:
        current = start
        while True:
            unused = ((inst, w) for inst, w in adjacency[current] if inst not in directions)
            step = next(unused, None)
            if step is None:
                break
            inst, w = step
            directions[inst] = (current, w)
            current = w
    return directions


def cover_graph_k(G: MultiHypergraph, k: int) -> CoverPartition:
    """Split a simple graph with minimum degree >= k+1 into k edge covers.

    Level to a (k+1)-regular simple graph, edge-colour it with k+2 colours
    and let E' be the two top colour classes. A vertex missing a colour
    c < k sees both top colours, so it is inner on a path or cycle of E';
    after orienting E' its in-edge is recoloured c. Unused E' edges go to
    class 0.
    """
    if not G.is_graph():
        raise UnsupportedInputError("cover_graph_k needs a graph (every edge of size 2)")
    if not G.is_simple():
        raise UnsupportedInputError(
            "cover_graph_k needs a simple graph; use the multigraph splitter"
        )
    if k < 2:
        raise InputError(f"cover_graph_k needs k >= 2, got {k}")
    if G.n_vertices == 0:
        return _empty_partition(G, k)
    if G.min_degree <= k:
        raise InfeasibleError(f"minimum degree {G.min_degree} must exceed k={k}")

    d = k + 1
    reduced, provenance, stripped = _strip_vanishing(G, d)
    levelling = level(reduced, 2, d)
    target = levelling.target
    if not target.is_simple():
        raise InternalError("graph levelling produced repeated edges")

    colouring = vizing_edge_colour(target)
    if colouring.palette_size > k + 2:
        raise InternalError(f"edge colouring used {colouring.palette_size} > {k + 2} colours")
    classes = dict(colouring.colours)

    extra = [(inst, *target.edge_of(inst)) for inst in target.instances() if classes[inst] >= k]
    directions = _orient_paths_and_cycles(extra)  # type: ignore[arg-type]
    in_edge: Dict[int, EdgeInstance] = {head: inst for inst, (_, head) in directions.items()}

    recoloured = set()
    for v in range(target.n_vertices):
        seen = colouring.colours_seen(target, v)
        missing = [c for c in range(k) if c not in seen]
        if not missing:
            continue
        if len(missing) > 1 or v not in in_edge:
            raise InternalError(f"vertex {v} misses colours {missing} with no E' in-edge")
        inst = in_edge[v]
        if inst in recoloured:
            raise InternalError(f"instance {tuple(inst)} recoloured twice")
        recoloured.add(inst)
        classes[inst] = missing[0]

    for inst, c in classes.items():
        if c >= k:
            classes[inst] = 0

    target_partition = _checked(target, CoverPartition(k, classes), "cover_graph_k")
    reduced_partition = pull_back(levelling, target_partition)

    assignment = {
        provenance[inst.edge_index]: c for inst, c in reduced_partition.assignment.items()
    }
    assignment.update({inst: 0 for inst in stripped})
    return _checked(G, CoverPartition(k, assignment), "cover_graph_k")


# ----------------------------------------------------------------------
# Multigraphs: delta >= floor((4k+1)/3)
# ----------------------------------------------------------------------


def multigraph_threshold(k: int) -> int:
    """Minimum degree that guarantees a k-split of any multigraph."""
    if k < 1:
        raise InputError(f"k must be positive, got {k}")
    d = (4 * k + 1) // 3
    t, i = divmod(k, 3)
    expected = {0: 4 * t, 1: 4 * t + 1, 2: 4 * t + 3}[i]
    if d != expected:
        raise InternalError(f"threshold {d} for k={k} disagrees with the k mod 3 case {expected}")
    return d


def multigraph_cover_lower_bound(delta: int) -> int:
    """Covering number every multigraph of minimum degree delta reaches."""
    if delta < 1:
        raise InputError(f"minimum degree must be positive, got {delta}")
    return (3 * delta + 1) // 4


def cover_multigraph_k(G: MultiHypergraph, k: int) -> CoverPartition:
    """Split a multigraph with minimum degree >= floor((4k+1)/3) into k covers.

    Level to d-regular, take a locally maximal cut, spread-colour the cross
    edges with k colours and orient the edges inside each side. A vertex
    with j inside edges misses at most floor(j/2) colours and fills them on
    its own out-edges.
    """
    if not G.is_graph():
        raise UnsupportedInputError("cover_multigraph_k needs a multigraph (every edge of size 2)")
    d = multigraph_threshold(k)
    if G.n_vertices == 0:
        return _empty_partition(G, k)
    if G.min_degree < d:
        raise InfeasibleError(f"minimum degree {G.min_degree} is below {d} for k={k}")

    levelling = level(G, 2, d)
    target = levelling.target
    cut = max_cut_local(target)

    cross = [inst for inst in target.instances() if cut.is_cross(target, inst)]
    inside = [inst for inst in target.instances() if not cut.is_cross(target, inst)]
    cross_graph, cross_provenance = target.sub_hypergraph(cross)
    inside_graph, inside_provenance = target.sub_hypergraph(inside)

    spread = spread_colour_bipartite(cross_graph, k, sides=cut.sides)
    orientation = orient_outdeg_half(inside_graph)

    classes: Dict[EdgeInstance, int] = {
        cross_provenance[inst.edge_index]: c for inst, c in spread.colours.items()
    }
    for v in range(target.n_vertices):
        j = inside_graph.degree(v)
        seen = spread.colours_seen(cross_graph, v)
        missing = [c for c in range(k) if c not in seen]
        out_edges = orientation.out_instances(v)
        if j > d // 2 or len(missing) > j // 2 or d - (j + 1) // 2 < k:
            raise InternalError(
                f"vertex {v}: {j} inside edges, {len(missing)} missing colours, d={d}, k={k}"
            )
        if len(missing) > len(out_edges):
            raise InternalError(f"vertex {v} has too few out-edges for its missing colours")
        for c, inst in zip(missing, out_edges):
            classes[inside_provenance[inst.edge_index]] = c

    for inst in inside:
        classes.setdefault(inst, 0)

    target_partition = _checked(target, CoverPartition(k, classes), "cover_multigraph_k")
    return _checked(G, pull_back(levelling, target_partition), "cover_multigraph_k")


# ----------------------------------------------------------------------
# Hypergraphs: delta >= r*k via Hall's theorem
# ----------------------------------------------------------------------


def hall_cover(H: MultiHypergraph, k: int) -> CoverPartition:
    """Give every vertex k private incident instances, one per class.

    Slots (v, i) for i < k are matched to incident instances; the match
    exists by Hall's condition when the minimum degree is at least r*k.
    Unmatched instances go to class 0.
    """
    if k < 1:
        raise InputError(f"k must be positive, got {k}")
    if H.n_vertices == 0:
        return _empty_partition(H, k)
    r = max(H.max_edge_size, 1)
    if H.min_degree < r * k:
        raise InfeasibleError(f"minimum degree {H.min_degree} is below r*k = {r * k}")

    graph = nx.Graph()
    slots = [("slot", v, i) for v in range(H.n_vertices) for i in range(k)]
    graph.add_nodes_from(slots, bipartite=0)
    graph.add_nodes_from((("edge", *inst) for inst in H.instances()), bipartite=1)
    for v in range(H.n_vertices):
        for inst in H.incident_instances(v):
            for i in range(k):
                graph.add_edge(("slot", v, i), ("edge", *inst))

    matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=slots)
    assignment: Dict[EdgeInstance, int] = {}
    for slot in slots:
        if slot not in matching:
            raise InternalError(f"slot {slot[1:]} is unmatched although Hall's condition holds")
        _, e, c = matching[slot]
        assignment[EdgeInstance(e, c)] = slot[2]
    for inst in H.instances():
        assignment.setdefault(inst, 0)
    return _checked(H, CoverPartition(k, assignment), "hall_cover")


# ----------------------------------------------------------------------
# k = 2 with repeated edges
# ----------------------------------------------------------------------


def split2_threshold(H: MultiHypergraph) -> Optional[int]:
    """Residual levelling degree for `split2_multi`, capped at the known 2-split degree.

    None when no threshold is known for H's edge size; the residual is then
    levelled to its own minimum degree.
    """
    known = TWO_SPLIT_DEGREE.get(H.max_edge_size)
    if known is None or not H.n_vertices:
        return None
    return min(known, H.min_degree)


def split2_multi(
    H: MultiHypergraph, solver: SimpleSolver, threshold: Optional[int] = None
) -> CoverPartition:
    """2-split a multihypergraph by pairing repeated edges off.

    Two copies of a repeated (restricted) edge go red and blue and cover
    their vertices in both classes. The edges are then restricted to the
    still uncovered vertices and the pairing repeats until no edge is
    repeated. The simple residual is levelled to `threshold` (default: its
    minimum degree), `solver` splits the levelling and the result is pulled
    back. Instances not meeting the residual go to class 0.
    """
    if H.isolated_vertices():
        raise InfeasibleError(f"vertex {H.isolated_vertices()[0]} lies in no edge")
    uncovered = set(range(H.n_vertices))
    assignment: Dict[EdgeInstance, int] = {}

    while True:
        groups: Dict[Tuple[int, ...], List[EdgeInstance]] = {}
        for inst in H.instances():
            if inst in assignment:
                continue
            restricted = tuple(v for v in H.edge_of(inst) if v in uncovered)
            if restricted:
                groups.setdefault(restricted, []).append(inst)
        repeated = sorted(
            (restricted, members) for restricted, members in groups.items() if len(members) > 1
        )
        if not repeated:
            break
        for restricted, members in repeated:
            red, blue = members[0], members[1]
            assignment[red] = 0
            assignment[blue] = 1
            uncovered.difference_update(restricted)
        log_debug(f"paired {len(repeated)} repeated edge(s); {len(uncovered)} vertices left")

    if uncovered:
        labels = sorted(uncovered)
        relabel = {v: i for i, v in enumerate(labels)}
        residual_instances = [
            inst
            for inst in H.instances()
            if inst not in assignment and any(v in uncovered for v in H.edge_of(inst))
        ]
        residual = MultiHypergraph.from_edges(
            len(labels),
            [
                [relabel[v] for v in H.edge_of(inst) if v in uncovered]
                for inst in residual_instances
            ],
        )
        d = residual.min_degree if threshold is None else threshold
        if residual.min_degree < d:
            raise InfeasibleError(
                f"residual minimum degree {residual.min_degree} is below the threshold {d}"
            )

        reduced, provenance, stripped = _strip_vanishing(residual, d)
        levelling = level(reduced, reduced.max_edge_size, d)
        target_partition = solver(levelling.target)
        if target_partition.k != 2:
            raise InternalError(f"solver returned {target_partition.k} classes instead of 2")
        reduced_partition = pull_back(levelling, target_partition)

        for inst, c in reduced_partition.assignment.items():
            residual_inst = provenance[inst.edge_index]
            assignment[residual_instances[residual_inst.edge_index]] = c
        for residual_inst in stripped:
            assignment[residual_instances[residual_inst.edge_index]] = 0

    for inst in H.instances():
        assignment.setdefault(inst, 0)
    return _checked(H, CoverPartition(2, assignment), "split2_multi")
