from Sepdec.errors import (
    ArrayPresentError,
    GuaranteeViolatedError,
    NoModulusError,
    NotConvergedError,
    NotDecomposableError,
    ResolutionExhaustedError,
    SepdecError,
)
from Sepdec.geometry import PlaneSample, detect_three_array, modulus_delta
from Sepdec.lattice import build_graph, choose_resolution, classify_edges
from Sepdec.oracle import exact_decompose_finite, verify_theorem1_exhaustive
from Sepdec.solver import DecompositionResult, decompose, evaluate
from Sepdec.step import PiecewiseLinear, StepResult, decompose_step

__all__ = [
    "ArrayPresentError",
    "DecompositionResult",
    "GuaranteeViolatedError",
    "NoModulusError",
    "NotConvergedError",
    "NotDecomposableError",
    "PiecewiseLinear",
    "PlaneSample",
    "ResolutionExhaustedError",
    "SepdecError",
    "StepResult",
    "build_graph",
    "choose_resolution",
    "classify_edges",
    "decompose",
    "decompose_step",
    "detect_three_array",
    "evaluate",
    "exact_decompose_finite",
    "modulus_delta",
    "verify_theorem1_exhaustive",
]
