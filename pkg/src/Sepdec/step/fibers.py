from fractions import Fraction
from typing import Dict, Tuple

from Sepdec.errors import GuaranteeViolatedError
from Sepdec.lattice.graph import Cell, LatticeGraph
from Sepdec.step.piecewise_linear import PiecewiseLinear
from Sepdec.step.vertex_function import VertexFunction

Grid = Dict[Fraction, float]


def fiber_representatives(graph: LatticeGraph) -> Tuple[Dict[int, Cell], Dict[int, Cell]]:
    """Per column the vertex with the smallest row index, per row the one with the
    smallest column index."""
    by_column: Dict[int, Cell] = {}
    by_row: Dict[int, Cell] = {}
    for u in graph.vertices:
        by_column.setdefault(u[0], u)
        by_row.setdefault(u[1], u)
    return by_column, by_row


def fiber_functions(
    graph: LatticeGraph,
    fn: VertexFunction,
    gn: VertexFunction,
    eps: float,
    rtol: float = 1e-12,
) -> Tuple[Grid, Grid]:
    """g on the columns and h on the rows of the lattice graph.

    g(x) = g^n(u) and h(y) = f^n(u) - g^n(u) for the fiber representatives. Checks the
    per-vertex 3*eps error and the eps / 2*eps variation across neighbouring fibers.
    """
    by_column, by_row = fiber_representatives(graph)
    g_grid: Grid = {graph.p(u): gn[u] for _, u in sorted(by_column.items())}
    h_grid: Grid = {graph.q(u): fn[u] - gn[u] for _, u in sorted(by_row.items())}

    slack = rtol * max(fn.sup_norm(), eps)
    for u in graph.vertices:
        error = abs(fn[u] - g_grid[graph.p(u)] - h_grid[graph.q(u)])
        if error > 3 * eps + slack:
            raise GuaranteeViolatedError("vertex_3eps", f"|f - g - h| = {error}", u)

    for i, u in by_column.items():
        v = by_column.get(i + 1)
        if v is not None and abs(gn[u] - gn[v]) > eps + slack:
            raise GuaranteeViolatedError(
                "column_eps", f"|dg| = {abs(gn[u] - gn[v])} > {eps}", (u, v)
            )

    for j, u in by_row.items():
        v = by_row.get(j + 1)
        if v is None:
            continue
        jump = abs((fn[u] - gn[u]) - (fn[v] - gn[v]))
        if jump > 2 * eps + slack:
            raise GuaranteeViolatedError("row_2eps", f"|dh| = {jump} > {2 * eps}", (u, v))

    return g_grid, h_grid


def extend_pl(grid: Grid, n: int) -> PiecewiseLinear:
    """Continuous extension of a function given on level-n lattice coordinates.

    Neighbouring coordinates are joined linearly; across a gap the value is held for one
    cell width and then joined linearly to the next coordinate. Tails are constant.
    """
    if not grid:
        raise ValueError("cannot extend an empty grid")
    width = Fraction(1, 2**n)
    keys = sorted(grid)
    breakpoints = []
    for x, nxt in zip(keys, keys[1:]):
        breakpoints.append((x, grid[x]))
        if nxt - x > width:
            breakpoints.append((x + width, grid[x]))
    breakpoints.append((keys[-1], grid[keys[-1]]))
    return PiecewiseLinear(tuple(breakpoints))
