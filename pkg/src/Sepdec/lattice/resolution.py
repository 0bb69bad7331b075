import logging
import math
from fractions import Fraction
from typing import NamedTuple, Union

import networkx as nx

from Sepdec.errors import ResolutionExhaustedError
from Sepdec.geometry.sample import PlaneSample
from Sepdec.lattice.graph import LatticeGraph, SubgraphViews, build_graph, classify_edges
from Sepdec.utils.timing import timing_logger

logger = logging.getLogger(__name__)

Distance = Union[int, float]


class ResolutionChoice(NamedTuple):
    level: int
    graph: LatticeGraph
    views: SubgraphViews
    separation: Distance


def hv_separation(views: SubgraphViews, graph: LatticeGraph) -> Distance:
    """BFS distance in the whole graph from V_hor to V_vert.

    math.inf when either set is empty or no path joins them; 0 iff they intersect.
    """
    if not views.v_hor or not views.v_vert:
        return math.inf
    if views.v_hor & views.v_vert:
        return 0
    lengths = nx.multi_source_dijkstra_path_length(graph.graph, set(views.v_hor))
    reached = [lengths[u] for u in views.v_vert if u in lengths]
    return min(reached) if reached else math.inf


def first_admissible_level(delta: Fraction) -> int:
    """Smallest n with 1/2^n <= delta/2."""
    n = 0
    while Fraction(1, 2**n) > delta / 2:
        n += 1
    return n


def find_resolution(
    sample: PlaneSample, delta: Fraction, F: int, max_n: int
) -> ResolutionChoice:
    """Like choose_resolution, but hands back the graph and views it settled on."""
    delta = Fraction(delta)
    last_separation = None
    for n in range(first_admissible_level(delta), max_n + 1):
        graph = build_graph(sample, n)
        views = classify_edges(graph, delta)
        separation = hv_separation(views, graph)
        logger.debug(
            f"level {n}: {len(graph)} vertices, |V_hor|={len(views.v_hor)}, "
            f"|V_vert|={len(views.v_vert)}, separation={separation}"
        )
        if separation > F - 1:
            return ResolutionChoice(n, graph, views, separation)
        last_separation = separation
    raise ResolutionExhaustedError(max_n, delta, F, last_separation)


@timing_logger("choose_resolution")
def choose_resolution(sample: PlaneSample, delta: Fraction, F: int, max_n: int) -> int:
    """Smallest level with cell width <= delta/2 whose V_hor and V_vert are more than
    F - 1 steps apart.

    Stands in for the compactness argument that only asserts such a level exists.
    """
    return find_resolution(sample, delta, F, max_n).level
