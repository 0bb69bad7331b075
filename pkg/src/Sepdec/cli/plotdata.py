from pathlib import Path
from typing import Tuple, Union

import numpy as np

from Sepdec.geometry.sample import PlaneSample
from Sepdec.solver.solver import DecompositionResult
from Sepdec.step.decompose_step import StepResult, evaluate_residuals
from Sepdec.step.piecewise_linear import PiecewiseLinear
from Sepdec.utils.io import write_text_atomic


def _functions(
    result: Union[DecompositionResult, StepResult]
) -> Tuple[PiecewiseLinear, PiecewiseLinear]:
    if isinstance(result, StepResult):
        return result.g, result.h
    return result.g_total, result.h_total


def _dense_table(header: str, grid: np.ndarray, values: np.ndarray) -> str:
    rows = [header] + [f"{a!r},{b!r}" for a, b in zip(grid.tolist(), values.tolist())]
    return "\n".join(rows) + "\n"


def emit_plotdata(
    result: Union[DecompositionResult, StepResult],
    sample: PlaneSample,
    path: Union[str, Path],
    samples: int = 1000,
) -> None:
    """Write points.csv (x,y,f,residual) plus g_plot.csv and h_plot.csv into ``path``,
    each of g and h evaluated at ``samples`` evenly spaced points across the sample's
    bounding box."""
    out_dir = Path(path)
    g, h = _functions(result)
    residuals = evaluate_residuals(sample, g, h)
    lines = ["x,y,f,residual"]
    for index, (point, r) in enumerate(zip(sample.points, residuals.tolist())):
        x, y = sample.coordinates(index)
        lines.append(f"{x},{y},{point.fval!r},{r!r}")
    write_text_atomic(out_dir / "points.csv", "\n".join(lines) + "\n")

    xmin, xmax, ymin, ymax = (float(v) for v in sample.bounding_box)
    xs = np.linspace(xmin, xmax, samples)
    ys = np.linspace(ymin, ymax, samples)
    write_text_atomic(out_dir / "g_plot.csv", _dense_table("x,g", xs, g.evaluate_many(xs)))
    write_text_atomic(out_dir / "h_plot.csv", _dense_table("y,h", ys, h.evaluate_many(ys)))
