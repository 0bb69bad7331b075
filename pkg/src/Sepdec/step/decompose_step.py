import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict

import numpy as np

from Sepdec.errors import ArrayPresentError, GuaranteeViolatedError
from Sepdec.geometry.arrays import detect_three_array
from Sepdec.geometry.modulus import modulus_delta, sup_norm
from Sepdec.geometry.sample import PlaneSample
from Sepdec.lattice.resolution import find_resolution
from Sepdec.step.augmented import compute_F
from Sepdec.step.fibers import extend_pl, fiber_functions
from Sepdec.step.piecewise_linear import PiecewiseLinear
from Sepdec.step.potential import discrete_g, scan_theorem2_conditions
from Sepdec.step.vertex_function import check_short_edge_lemma, sample_f
from Sepdec.utils.logging_utils import TRACE_LOGGER_NAME, StepEvent
from Sepdec.utils.timing import timing_logger

logger = logging.getLogger(__name__)
trace_logger = logging.getLogger(TRACE_LOGGER_NAME)


@dataclass(frozen=True)
class StepResult:
    g: PiecewiseLinear
    h: PiecewiseLinear
    eps_used: float
    delta_used: Fraction
    level: int
    F: int
    f_norm: float
    residual_sup: float
    norm_g: float
    norm_h: float
    residuals: np.ndarray = field(repr=False, compare=False)
    certificate: Dict[str, bool] = field(default_factory=dict)


def evaluate_residuals(
    sample: PlaneSample, g: PiecewiseLinear, h: PiecewiseLinear
) -> np.ndarray:
    """f - g(x) - h(y) at every sample point."""
    return np.array(
        [p.fval - g.evaluate(p.x) - h.evaluate(p.y) for p in sample.points], dtype=float
    )


def ensure_no_array(sample: PlaneSample) -> None:
    witness = detect_three_array(sample)
    if witness is not None:
        raise ArrayPresentError(
            witness,
            (
                sample.coordinates(witness.a1),
                sample.coordinates(witness.a2),
                sample.coordinates(witness.a3),
            ),
        )


@timing_logger("decompose_step")
def decompose_step(
    sample: PlaneSample,
    eps: float,
    max_n: int = 24,
    min_exponent: int = 0,
    max_exponent: int = 60,
    rtol: float = 1e-12,
    check_arrays: bool = True,
) -> StepResult:
    """One approximation step: g, h with |f - g(x) - h(y)| <= 6 eps on the sample,
    ||g|| <= ||f|| and ||h|| <= 2 ||f||.

    ``check_arrays`` may be turned off by callers that already ran the detector on the
    same point set.
    """
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if check_arrays:
        ensure_no_array(sample)

    f_norm = sup_norm(sample)
    delta = modulus_delta(sample, eps, min_exponent, max_exponent)
    F = compute_F(f_norm, eps)
    choice = find_resolution(sample, delta, F, max_n)
    graph, views = choice.graph, choice.views

    fn = sample_f(sample, graph)
    if not check_short_edge_lemma(fn, views, eps):
        raise GuaranteeViolatedError(
            "short_edge_lemma", f"a short edge changes f^n by >= {eps}", choice.level
        )

    gn = discrete_g(graph, views, fn, eps, delta, F, rtol)
    conditions = scan_theorem2_conditions(graph, views, fn, gn, eps, rtol)
    g_grid, h_grid = fiber_functions(graph, fn, gn, eps, rtol)
    g = extend_pl(g_grid, choice.level)
    h = extend_pl(h_grid, choice.level)

    residuals = evaluate_residuals(sample, g, h)
    residual_sup = float(np.max(np.abs(residuals)))
    norm_g, norm_h = g.sup_norm(), h.sup_norm()

    slack = rtol * max(f_norm, eps)
    checks = {
        "residual_6eps": (residual_sup <= 6 * eps + slack, f"{residual_sup} > {6 * eps}"),
        "norm_g": (norm_g <= f_norm + slack, f"||g|| = {norm_g} > {f_norm}"),
        "norm_h": (norm_h <= 2 * f_norm + slack, f"||h|| = {norm_h} > {2 * f_norm}"),
    }
    for name, (ok, detail) in checks.items():
        if not ok:
            raise GuaranteeViolatedError(name, detail, choice.level)

    certificate = {"short_edge_lemma": True, **conditions.passed}
    certificate.update(
        {"vertex_3eps": True, "column_eps": True, "row_2eps": True}
    )
    certificate.update({name: ok for name, (ok, _) in checks.items()})

    trace_logger.info(
        StepEvent(
            eps=eps,
            delta=str(delta),
            level=choice.level,
            F=F,
            vertices=len(graph),
            edges=graph.graph.number_of_edges(),
            residual_sup=residual_sup,
            norm_g=norm_g,
            norm_h=norm_h,
        )
    )
    return StepResult(
        g=g,
        h=h,
        eps_used=eps,
        delta_used=delta,
        level=choice.level,
        F=F,
        f_norm=f_norm,
        residual_sup=residual_sup,
        norm_g=norm_g,
        norm_h=norm_h,
        residuals=residuals,
        certificate=certificate,
    )
