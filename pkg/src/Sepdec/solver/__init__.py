from Sepdec.solver.solver import (
    DecompositionResult,
    ResidualReport,
    decompose,
    evaluate,
)

__all__ = ["DecompositionResult", "ResidualReport", "decompose", "evaluate"]
