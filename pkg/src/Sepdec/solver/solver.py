import logging
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from Sepdec.errors import GuaranteeViolatedError, NotConvergedError
from Sepdec.geometry.modulus import sup_norm
from Sepdec.geometry.sample import PlaneSample
from Sepdec.step.decompose_step import (
    StepResult,
    decompose_step,
    ensure_no_array,
    evaluate_residuals,
)
from Sepdec.step.piecewise_linear import PiecewiseLinear
from Sepdec.utils.logging_utils import TRACE_LOGGER_NAME, IterationEvent
from Sepdec.utils.timing import timing_logger

logger = logging.getLogger(__name__)
trace_logger = logging.getLogger(TRACE_LOGGER_NAME)

# Each step leaves at most 6 eps; eps = ||f|| / divisor contracts by 6 / divisor.
STEP_ERROR_FACTOR = 6


@dataclass
class DecompositionResult:
    """Accumulated g and h, the per-iteration trace, and the final check."""

    g_total: PiecewiseLinear
    h_total: PiecewiseLinear
    trace: List[IterationEvent]
    final_residual: float
    converged: bool
    f_norm: float
    tol: float
    contraction: float
    steps: List[StepResult] = field(default_factory=list, repr=False)
    norm_bounds: Dict[str, float] = field(default_factory=dict)

    @property
    def iterations(self) -> int:
        return len(self.trace)


@dataclass(frozen=True)
class ResidualReport:
    residuals: np.ndarray
    sup: float
    mean: float


def evaluate(result: DecompositionResult, sample: PlaneSample) -> ResidualReport:
    """Residual f - g_total(x) - h_total(y) recomputed on ``sample``; mean is of |r|."""
    residuals = evaluate_residuals(sample, result.g_total, result.h_total)
    magnitudes = np.abs(residuals)
    return ResidualReport(
        residuals=residuals,
        sup=float(magnitudes.max()),
        mean=float(magnitudes.mean()),
    )


def _norm_bounds(
    steps: List[StepResult],
    g_total: PiecewiseLinear,
    h_total: PiecewiseLinear,
    f_norm: float,
    contraction: float,
    slack: float,
) -> Dict[str, float]:
    series = 1.0 / (1.0 - contraction)
    bounds = {
        "sum_norm_g": float(sum(s.norm_g for s in steps)),
        "sum_norm_h": float(sum(s.norm_h for s in steps)),
        "norm_g_total": g_total.sup_norm(),
        "norm_h_total": h_total.sup_norm(),
        "bound_g_total": series * f_norm,
        "bound_h_total": 2 * series * f_norm,
    }
    if bounds["norm_g_total"] > bounds["bound_g_total"] + slack:
        raise GuaranteeViolatedError(
            "norm_g_total", f"{bounds['norm_g_total']} > {bounds['bound_g_total']}"
        )
    if bounds["norm_h_total"] > bounds["bound_h_total"] + slack:
        raise GuaranteeViolatedError(
            "norm_h_total", f"{bounds['norm_h_total']} > {bounds['bound_h_total']}"
        )
    return bounds


@timing_logger("decompose")
def decompose(
    sample: PlaneSample,
    tol: float,
    max_iter: int,
    max_n: int = 24,
    contraction_divisor: float = 12,
    min_exponent: int = 0,
    max_exponent: int = 60,
    rtol: float = 1e-12,
    raise_on_failure: bool = False,
) -> DecompositionResult:
    """Drive |f - g(x) - h(y)| below ``tol`` by decomposing the residual repeatedly.

    Iteration i uses eps_i = ||f_{i-1}|| / contraction_divisor, so the residual shrinks
    by rho = 6 / contraction_divisor per iteration; residual_i <= ||f|| rho^i is enforced.
    With ``raise_on_failure`` a run that stops above tol raises NotConvergedError;
    otherwise the result comes back with ``converged=False``.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be at least 1, got {max_iter}")
    if contraction_divisor <= STEP_ERROR_FACTOR:
        raise ValueError(
            f"contraction_divisor must exceed {STEP_ERROR_FACTOR}, got {contraction_divisor}"
        )
    ensure_no_array(sample)

    contraction = STEP_ERROR_FACTOR / contraction_divisor
    f_norm = sup_norm(sample)
    slack = rtol * max(f_norm, 1.0)
    g_total, h_total = PiecewiseLinear.zero(), PiecewiseLinear.zero()
    trace: List[IterationEvent] = []
    steps: List[StepResult] = []
    residual = sample
    residual_sup = f_norm

    for i in range(1, max_iter + 1):
        if residual_sup <= tol:
            break
        eps = residual_sup / contraction_divisor
        step = decompose_step(
            residual,
            eps,
            max_n=max_n,
            min_exponent=min_exponent,
            max_exponent=max_exponent,
            rtol=rtol,
            check_arrays=False,
        )
        steps.append(step)
        g_total = g_total + step.g
        h_total = h_total + step.h

        # recomputed from the totals so rounding does not accumulate across iterations
        residual = sample.with_values(evaluate_residuals(sample, g_total, h_total))
        entering = residual_sup
        residual_sup = sup_norm(residual)

        envelope = f_norm * contraction**i
        if residual_sup > envelope + slack:
            raise GuaranteeViolatedError(
                "geometric_envelope", f"residual {residual_sup} > {envelope}", i
            )
        if step.norm_g > entering + slack or step.norm_h > 2 * entering + slack:
            raise GuaranteeViolatedError(
                "step_norms", f"||g_i|| = {step.norm_g}, ||h_i|| = {step.norm_h}", i
            )

        event = IterationEvent(
            iter=i,
            eps=eps,
            residual_sup=residual_sup,
            norm_g=step.norm_g,
            norm_h=step.norm_h,
            level_n=step.level,
        )
        trace.append(event)
        trace_logger.info(event)

    final_residual = float(
        np.max(np.abs(evaluate_residuals(sample, g_total, h_total)))
    )
    converged = final_residual <= tol
    result = DecompositionResult(
        g_total=g_total,
        h_total=h_total,
        trace=trace,
        final_residual=final_residual,
        converged=converged,
        f_norm=f_norm,
        tol=tol,
        contraction=contraction,
        steps=steps,
        norm_bounds=_norm_bounds(steps, g_total, h_total, f_norm, contraction, slack),
    )
    if converged:
        logger.info(
            f"converged after {result.iterations} iterations, residual {final_residual:.3g}"
        )
    else:
        logger.warning(
            f"not converged after {result.iterations} iterations, "
            f"residual {final_residual:.3g} > tol {tol:.3g}"
        )
        if raise_on_failure:
            raise NotConvergedError(result)
    return result
