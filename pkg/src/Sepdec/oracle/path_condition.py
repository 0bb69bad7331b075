from fractions import Fraction
from typing import List, Optional, Set

from Sepdec.errors import TooLargeError
from Sepdec.lattice.graph import Cell, LatticeGraph, SubgraphViews

MAX_EXHAUSTIVE_VERTICES = 20


def find_short_bridge(
    graph: LatticeGraph, l: int, alpha: Fraction
) -> Optional[List[Cell]]:
    """A simple path u_0 ... u_k with k <= l, |p(u_0) - p(u_1)| >= alpha and
    |q(u_{k-1}) - q(u_k)| >= alpha, or None.

    Longer paths cannot violate the length bound, so the search stops at depth l.
    """
    alpha = Fraction(alpha)
    nx_graph = graph.graph

    def p_gap(a: Cell, b: Cell) -> Fraction:
        return abs(graph.p(a) - graph.p(b))

    def q_gap(a: Cell, b: Cell) -> Fraction:
        return abs(graph.q(a) - graph.q(b))

    def extend(path: List[Cell], visited: Set[Cell]) -> Optional[List[Cell]]:
        if q_gap(path[-2], path[-1]) >= alpha:
            return list(path)
        if len(path) - 1 >= l:
            return None
        for nxt in sorted(nx_graph.neighbors(path[-1])):
            if nxt in visited:
                continue
            visited.add(nxt)
            path.append(nxt)
            found = extend(path, visited)
            path.pop()
            visited.discard(nxt)
            if found is not None:
                return found
        return None

    if l < 1:
        return None
    for start in graph.vertices:
        for second in sorted(nx_graph.neighbors(start)):
            if p_gap(start, second) < alpha:
                continue
            found = extend([start, second], {start, second})
            if found is not None:
                return found
    return None


def verify_theorem1_exhaustive(
    graph: LatticeGraph,
    views: SubgraphViews,
    l: int,
    alpha: Fraction,
    max_vertices: int = MAX_EXHAUSTIVE_VERTICES,
) -> bool:
    """True iff every simple path starting with a p-gap >= alpha and ending with a
    q-gap >= alpha has more than l edges."""
    if len(graph) > max_vertices:
        raise TooLargeError(
            f"exhaustive path check limited to {max_vertices} vertices, got {len(graph)}"
        )
    # such a first edge would be long, so nothing to enumerate
    if Fraction(alpha) >= views.delta and not (
        views.long_horizontal_edges or views.long_vertical_edges
    ):
        return True
    return find_short_bridge(graph, l, alpha) is None
