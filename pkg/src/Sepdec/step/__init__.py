from Sepdec.step.augmented import (
    AugmentedSignGraph,
    ChainVertex,
    build_augmented,
    compute_F,
)
from Sepdec.step.decompose_step import StepResult, decompose_step, evaluate_residuals
from Sepdec.step.fibers import extend_pl, fiber_functions
from Sepdec.step.piecewise_linear import PiecewiseLinear
from Sepdec.step.potential import ConditionReport, discrete_g, scan_theorem2_conditions
from Sepdec.step.vertex_function import VertexFunction, check_short_edge_lemma, sample_f

__all__ = [
    "AugmentedSignGraph",
    "ChainVertex",
    "ConditionReport",
    "PiecewiseLinear",
    "StepResult",
    "VertexFunction",
    "build_augmented",
    "check_short_edge_lemma",
    "compute_F",
    "decompose_step",
    "discrete_g",
    "evaluate_residuals",
    "extend_pl",
    "fiber_functions",
    "sample_f",
    "scan_theorem2_conditions",
]
