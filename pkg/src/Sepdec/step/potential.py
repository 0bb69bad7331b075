import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from Sepdec.errors import GuaranteeViolatedError
from Sepdec.lattice.graph import Cell, LatticeGraph, SubgraphViews
from Sepdec.step.augmented import AugmentedSignGraph, build_augmented
from Sepdec.step.vertex_function import VertexFunction

logger = logging.getLogger(__name__)


@dataclass
class ConditionReport:
    """Outcome of the independent scan over the potential's guarantees."""

    passed: Dict[str, bool] = field(default_factory=dict)
    failures: List[Tuple[str, str, object]] = field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str = "", where: object = None):
        self.passed[name] = self.passed.get(name, True) and ok
        if not ok:
            self.failures.append((name, detail, where))

    @property
    def ok(self) -> bool:
        return all(self.passed.values())

    def raise_first(self) -> None:
        if self.failures:
            name, detail, where = self.failures[0]
            raise GuaranteeViolatedError(name, detail, where)


def _slack(fn: VertexFunction, eps: float, rtol: float) -> float:
    return rtol * max(fn.sup_norm(), eps)


def potential_value(augmented: AugmentedSignGraph, u: Cell, eps: float, F: int) -> float:
    """g^n on one base vertex of a sign class, before the sign is applied.

    min{|f^n(u)|, max{(F + 1 - d(u)) eps, 0}} when w_F reaches u, else 0.
    """
    if augmented.trivial or u not in augmented.reachable:
        return 0.0
    level = max((F + 1 - augmented.distances[u]) * eps, 0.0)
    return min(augmented.magnitudes[u], level)


def scan_theorem2_conditions(
    graph: LatticeGraph,
    views: SubgraphViews,
    fn: VertexFunction,
    gn: VertexFunction,
    eps: float,
    rtol: float = 1e-12,
) -> ConditionReport:
    """Check the potential against its guarantees, without looking at how it was built.

    cond_1a: |g(u1) - g(u2)| <= eps on short edges
    cond_1b: |f(u) - g(u)| <= eps at vertices of long horizontal edges
    cond_1c: g(u) = 0 at vertices of long vertical edges
    cond_2:  ||g|| <= ||f||
    sandwich: g between 0 and f
    """
    slack = _slack(fn, eps, rtol)
    report = ConditionReport()
    for name in ("cond_1a", "cond_1b", "cond_1c", "cond_2", "sandwich"):
        report.passed[name] = True

    for a, b in sorted(views.short_edges):
        jump = abs(gn[a] - gn[b])
        if jump > eps + slack:
            report.record("cond_1a", False, f"|dg| = {jump} > {eps}", (a, b))

    for u in sorted(views.v_hor):
        gap = abs(fn[u] - gn[u])
        if gap > eps + slack:
            report.record("cond_1b", False, f"|f - g| = {gap} > {eps}", u)

    for u in sorted(views.v_vert):
        if gn[u] != 0:
            report.record("cond_1c", False, f"g = {gn[u]} != 0", u)

    if gn.sup_norm() > fn.sup_norm() + slack:
        report.record(
            "cond_2", False, f"||g|| = {gn.sup_norm()} > ||f|| = {fn.sup_norm()}"
        )

    for u in graph.vertices:
        f_value, g_value = fn[u], gn[u]
        low, high = (0.0, f_value) if f_value >= 0 else (f_value, 0.0)
        if not (low - slack <= g_value <= high + slack):
            report.record("sandwich", False, f"g = {g_value} outside [{low}, {high}]", u)

    return report


def discrete_g(
    graph: LatticeGraph,
    views: SubgraphViews,
    fn: VertexFunction,
    eps: float,
    delta: Fraction,
    F: int,
    rtol: float = 1e-12,
) -> VertexFunction:
    """The potential g^n: built per sign class from distances to the top of the chain.

    The minus class runs the plus construction on |f^n| and flips the sign.
    Raises GuaranteeViolatedError when the independent scan rejects the result.
    """
    if Fraction(delta) != views.delta:
        raise ValueError(f"views were classified for delta={views.delta}, not {delta}")

    slack = _slack(fn, eps, rtol)
    values: Dict[Cell, float] = {}
    for sign, factor in (("plus", 1.0), ("minus", -1.0)):
        augmented = build_augmented(graph, views, fn, sign, eps, F)
        augmented.check_edges(eps, slack)
        for u in sorted(augmented.base_vertices):
            values[u] = factor * potential_value(augmented, u, eps, F)
        logger.debug(
            f"{sign} class: {len(augmented.base_vertices)} vertices, "
            f"{'trivial' if augmented.trivial else f'{len(augmented.reachable)} reached'}"
        )

    # -0.0 from the minus class reads as a plain zero
    gn = VertexFunction(graph=graph, values={u: v + 0.0 for u, v in values.items()})
    scan_theorem2_conditions(graph, views, fn, gn, eps, rtol).raise_first()
    return gn

