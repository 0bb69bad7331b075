import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, Literal, Tuple

import networkx as nx

from Sepdec.errors import GuaranteeViolatedError
from Sepdec.lattice.graph import Cell, LatticeGraph, SubgraphViews
from Sepdec.step.vertex_function import VertexFunction

Sign = Literal["plus", "minus"]


@dataclass(frozen=True)
class ChainVertex:
    """w_i, carrying the level value i*eps."""

    index: int


def bucket(value: float, eps: float) -> int:
    """The integer i with i*eps <= value < (i+1)*eps, evaluated in float arithmetic."""
    i = math.floor(value / eps)
    while i * eps > value:
        i -= 1
    while (i + 1) * eps <= value:
        i += 1
    return i


def compute_F(f_norm: float, eps: float) -> int:
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    return bucket(f_norm, eps)


def in_sign_class(value: float, sign: Sign) -> bool:
    return value >= 0 if sign == "plus" else value < 0


@dataclass(frozen=True)
class AugmentedSignGraph:
    """One sign class of the lattice graph plus the level chain w_0 ... w_F.

    Values are magnitudes: the minus class is built on |f^n|. ``distances`` holds the
    BFS distance to w_F, 0 for vertices w_F cannot reach; ``reachable`` tells the two
    apart.
    """

    sign: Sign
    base_vertices: FrozenSet[Cell]
    chain: Tuple[ChainVertex, ...]
    graph: nx.Graph
    magnitudes: Dict[Hashable, float]
    distances: Dict[Hashable, int]
    reachable: FrozenSet[Hashable]
    trivial: bool

    @property
    def top(self) -> ChainVertex:
        return self.chain[-1]

    def check_edges(self, eps: float, slack: float = 0.0) -> None:
        """Every edge changes the magnitude by at most eps."""
        for a, b in self.graph.edges:
            jump = abs(self.magnitudes[a] - self.magnitudes[b])
            if jump > eps + slack:
                raise GuaranteeViolatedError(
                    "augmented_edge", f"|df| = {jump} > eps = {eps}", (a, b)
                )


def build_augmented(
    graph: LatticeGraph,
    views: SubgraphViews,
    fn: VertexFunction,
    sign: Sign,
    eps: float,
    F: int,
) -> AugmentedSignGraph:
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")

    base = frozenset(u for u in graph.vertices if in_sign_class(fn[u], sign))
    magnitudes: Dict[Hashable, float] = {u: abs(fn[u]) for u in base}
    anchors = sorted(base & views.v_hor)

    if not anchors:
        trivial = nx.Graph()
        trivial.add_nodes_from(sorted(base))
        return AugmentedSignGraph(
            sign=sign,
            base_vertices=base,
            chain=(),
            graph=nx.freeze(trivial),
            magnitudes=magnitudes,
            distances={u: 0 for u in base},
            reachable=frozenset(),
            trivial=True,
        )

    chain = tuple(ChainVertex(i) for i in range(F + 1))
    augmented = nx.Graph()
    augmented.add_nodes_from(sorted(base))
    augmented.add_nodes_from(chain)
    for w in chain:
        magnitudes[w] = w.index * eps

    augmented.add_edges_from(
        (a, b) for a, b in sorted(views.short_edges) if a in base and b in base
    )
    augmented.add_edges_from(zip(chain, chain[1:]))
    for u in anchors:
        augmented.add_edge(chain[min(bucket(magnitudes[u], eps), F)], u)

    lengths = nx.single_source_shortest_path_length(augmented, chain[-1])
    distances = {node: lengths.get(node, 0) for node in augmented.nodes}
    return AugmentedSignGraph(
        sign=sign,
        base_vertices=base,
        chain=chain,
        graph=nx.freeze(augmented),
        magnitudes=magnitudes,
        distances=distances,
        reachable=frozenset(lengths),
        trivial=False,
    )
