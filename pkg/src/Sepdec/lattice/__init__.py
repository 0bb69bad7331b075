from Sepdec.lattice.graph import (
    Cell,
    Edge,
    LatticeGraph,
    SubgraphViews,
    build_graph,
    classify_edges,
    edge_key,
)
from Sepdec.lattice.resolution import (
    ResolutionChoice,
    choose_resolution,
    find_resolution,
    hv_separation,
)

__all__ = [
    "Cell",
    "Edge",
    "LatticeGraph",
    "ResolutionChoice",
    "SubgraphViews",
    "build_graph",
    "choose_resolution",
    "classify_edges",
    "edge_key",
    "find_resolution",
    "hv_separation",
]
