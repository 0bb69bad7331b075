from collections import defaultdict, deque
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Tuple

import networkx as nx

from Sepdec.errors import NotDecomposableError
from Sepdec.geometry.sample import ExactCoord, PlaneSample

ExactGrid = Dict[ExactCoord, Fraction]
# nodes are sample indices; edges carry ``axis`` in {"x", "y"}
AlignmentGraph = nx.Graph


def alignment_graph(sample: PlaneSample) -> AlignmentGraph:
    """Points linked when they share an exact x (``axis="x"``) or an exact y (``"y"``)."""
    graph = nx.Graph()
    graph.add_nodes_from(range(len(sample)))
    for axis, coords in (("x", sample.xs), ("y", sample.ys)):
        groups: Dict[ExactCoord, List[int]] = defaultdict(list)
        for index, value in enumerate(coords):
            groups[value].append(index)
        for members in groups.values():
            for a, b in combinations(members, 2):
                if graph.has_edge(a, b):
                    continue
                graph.add_edge(a, b, axis=axis)
    return graph


def exact_decompose_finite(sample: PlaneSample) -> Tuple[ExactGrid, ExactGrid]:
    """g on the sample's x-values and h on its y-values with f = g(x) + h(y) exactly.

    Values propagate along alignment links from the smallest index of each component,
    whose g is pinned to 0. Raises NotDecomposableError when a cycle of links forces
    contradictory values.
    """
    graph = alignment_graph(sample)
    values = [Fraction(p.fval) for p in sample.points]
    g_grid: ExactGrid = {}
    h_grid: ExactGrid = {}

    for component in sorted(nx.connected_components(graph), key=min):
        root = min(component)
        root_point = sample.points[root]
        g_grid[root_point.x] = Fraction(0)
        h_grid[root_point.y] = values[root]
        queue = deque([root])
        seen = {root}
        while queue:
            node = queue.popleft()
            for neighbour in sorted(graph.neighbors(node)):
                if neighbour in seen:
                    continue
                seen.add(neighbour)
                point = sample.points[neighbour]
                if graph.edges[node, neighbour]["axis"] == "x":
                    h_grid.setdefault(point.y, values[neighbour] - g_grid[point.x])
                else:
                    g_grid.setdefault(point.x, values[neighbour] - h_grid[point.y])
                queue.append(neighbour)

    for index, point in enumerate(sample.points):
        mismatch = values[index] - g_grid[point.x] - h_grid[point.y]
        if mismatch != 0:
            raise NotDecomposableError(index, mismatch)
    return g_grid, h_grid
