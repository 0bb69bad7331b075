from dataclasses import dataclass
from typing import Dict

from Sepdec.geometry.sample import PlaneSample
from Sepdec.lattice.graph import Cell, LatticeGraph, SubgraphViews


@dataclass(frozen=True)
class VertexFunction:
    """A real value at every vertex of one lattice graph."""

    graph: LatticeGraph
    values: Dict[Cell, float]

    def __post_init__(self):
        missing = set(self.graph.graph.nodes) - set(self.values)
        if missing:
            raise ValueError(f"vertex function undefined at {sorted(missing)[:5]}")

    def __getitem__(self, u: Cell) -> float:
        return self.values[u]

    def sup_norm(self) -> float:
        return max((abs(v) for v in self.values.values()), default=0.0)


def sample_f(sample: PlaneSample, graph: LatticeGraph) -> VertexFunction:
    """f^n(u) = f(x_u), x_u the representative point of the cell."""
    return VertexFunction(
        graph=graph,
        values={
            u: sample.points[index].fval for u, index in graph.representatives.items()
        },
    )


def check_short_edge_lemma(fn: VertexFunction, views: SubgraphViews, eps: float) -> bool:
    """Every short edge changes f^n by strictly less than eps."""
    return all(abs(fn[a] - fn[b]) < eps for a, b in views.short_edges)
