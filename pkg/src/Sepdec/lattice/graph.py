from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Any, Dict, FrozenSet, Iterator, List, Optional, Tuple

import networkx as nx

from Sepdec.geometry.sample import ExactCoord, PlaneSample, cell_index

Cell = Tuple[int, int]
Edge = Tuple[Cell, Cell]


def edge_key(u: Cell, v: Cell) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class LatticeGraph:
    """The lattice graph at level n.

    Vertices are occupied cells (i, j), standing for the lattice point (i/2^n, j/2^n).
    Each edge carries ``v`` (same or adjacent column) and ``h`` (same or adjacent row).
    The networkx graph is frozen after construction.
    """

    level: int
    graph: nx.Graph
    representatives: Dict[Cell, int]

    @property
    def cell_width(self) -> Fraction:
        return Fraction(1, 2**self.level)

    @property
    def vertices(self) -> List[Cell]:
        return sorted(self.graph.nodes)

    def edges(self) -> Iterator[Tuple[Cell, Cell, Dict[str, Any]]]:
        for u, v, data in self.graph.edges(data=True):
            a, b = edge_key(u, v)
            yield a, b, data

    def p(self, u: Cell) -> ExactCoord:
        return Fraction(u[0], 2**self.level)

    def q(self, u: Cell) -> ExactCoord:
        return Fraction(u[1], 2**self.level)

    def lattice_distance(self, u: Cell, v: Cell) -> ExactCoord:
        """Max-metric distance between the two lattice points."""
        return max(abs(u[0] - v[0]), abs(u[1] - v[1])) * self.cell_width

    def representative(self, u: Cell) -> int:
        return self.representatives[u]

    def __len__(self) -> int:
        return self.graph.number_of_nodes()

    def to_json(self, views: Optional["SubgraphViews"] = None) -> Dict[str, Any]:
        edges = []
        for a, b, data in sorted(self.edges(), key=lambda e: (e[0], e[1])):
            flags = {"v": data["v"], "h": data["h"]}
            flags["long"] = (
                views is not None and edge_key(a, b) not in views.short_edges
            )
            edges.append([list(a), list(b), flags])
        payload: Dict[str, Any] = {
            "level": self.level,
            "vertices": [list(u) for u in self.vertices],
            "edges": edges,
        }
        return payload


@dataclass(frozen=True)
class SubgraphViews:
    """Short / long-horizontal / long-vertical split of the edges for one delta."""

    delta: Fraction
    short_edges: FrozenSet[Edge]
    long_horizontal_edges: FrozenSet[Edge]
    long_vertical_edges: FrozenSet[Edge]
    v_hor: FrozenSet[Cell]
    v_vert: FrozenSet[Cell]

    def is_long(self, u: Cell, v: Cell) -> bool:
        key = edge_key(u, v)
        return key in self.long_horizontal_edges or key in self.long_vertical_edges


def build_graph(sample: PlaneSample, n: int) -> LatticeGraph:
    """Occupied cells at level n, joined when their columns or rows are within one cell."""
    if n < 0:
        raise ValueError(f"level must be nonnegative, got {n}")

    representatives: Dict[Cell, int] = {}
    for index, point in enumerate(sample.points):
        cell = (cell_index(point.x, n), cell_index(point.y, n))
        # smallest sample index wins
        representatives.setdefault(cell, index)

    columns: Dict[int, List[Cell]] = defaultdict(list)
    rows: Dict[int, List[Cell]] = defaultdict(list)
    for cell in sorted(representatives):
        columns[cell[0]].append(cell)
        rows[cell[1]].append(cell)

    graph = nx.Graph()
    for cell in sorted(representatives):
        graph.add_node(cell, rep=representatives[cell])

    def link(u: Cell, v: Cell) -> None:
        graph.add_edge(
            *edge_key(u, v),
            v=abs(u[0] - v[0]) <= 1,
            h=abs(u[1] - v[1]) <= 1,
        )

    for groups in (columns, rows):
        for key in sorted(groups):
            members = groups[key]
            for u, v in combinations(members, 2):
                link(u, v)
            for u, v in product(members, groups.get(key + 1, ())):
                link(u, v)

    return LatticeGraph(
        level=n, graph=nx.freeze(graph), representatives=dict(representatives)
    )


def classify_edges(graph: LatticeGraph, delta: Fraction) -> SubgraphViews:
    """Long iff the max-metric distance of the lattice endpoints is at least delta."""
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    delta = Fraction(delta)
    threshold = delta * 2**graph.level

    short, long_hor, long_vert = set(), set(), set()
    v_hor, v_vert = set(), set()
    for a, b, data in graph.edges():
        key = (a, b)
        if max(abs(a[0] - b[0]), abs(a[1] - b[1])) < threshold:
            short.add(key)
            continue
        if data["h"]:
            long_hor.add(key)
            v_hor.update(key)
        if data["v"]:
            long_vert.add(key)
            v_vert.update(key)

    return SubgraphViews(
        delta=delta,
        short_edges=frozenset(short),
        long_horizontal_edges=frozenset(long_hor),
        long_vertical_edges=frozenset(long_vert),
        v_hor=frozenset(v_hor),
        v_vert=frozenset(v_vert),
    )
