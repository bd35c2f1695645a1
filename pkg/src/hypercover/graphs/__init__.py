"""Graph and multigraph cover splitters."""

from hypercover.graphs.colouring import (
    EdgeColouring,
    bipartition_sides,
    spread_colour_bipartite,
    vizing_edge_colour,
)
from hypercover.graphs.cover import (
    cover_graph_k,
    cover_multigraph_k,
    hall_cover,
    multigraph_cover_lower_bound,
    multigraph_threshold,
    split2_multi,
    split2_threshold,
)
from hypercover.graphs.orientation import (
    Bipartition,
    Orientation,
    max_cut_local,
    orient_outdeg_half,
)

__all__ = [
    "Bipartition",
    "EdgeColouring",
    "Orientation",
    "bipartition_sides",
    "cover_graph_k",
    "cover_multigraph_k",
    "hall_cover",
    "max_cut_local",
    "multigraph_cover_lower_bound",
    "multigraph_threshold",
    "orient_outdeg_half",
    "split2_multi",
    "split2_threshold",
    "spread_colour_bipartite",
    "vizing_edge_colour",
]
