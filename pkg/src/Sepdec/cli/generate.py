import logging
import math
from fractions import Fraction
from typing import Dict, List, Set, Tuple

import numpy as np

from Sepdec.cli.config import Family, FunctionKind
from Sepdec.errors import GenerationFailedError
from Sepdec.geometry.arrays import detect_three_array
from Sepdec.geometry.sample import PlaneSample, SamplePoint

logger = logging.getLogger(__name__)

# generated coordinates are k / COORD_SCALE, so they stay exact decimals
COORD_SCALE = 10**6


def _coords(rng: np.random.Generator, count: int) -> List[int]:
    return [int(k) for k in rng.choice(COORD_SCALE, size=count, replace=False)]


def _monotone_curve(rng: np.random.Generator, size: int) -> List[Tuple[int, int]]:
    xs = sorted(_coords(rng, size))
    ys = sorted(_coords(rng, size))
    return list(zip(xs, ys))


def _coordinate_pairs(rng: np.random.Generator, size: int) -> List[Tuple[int, int]]:
    xs = iter(_coords(rng, size))
    ys = iter(_coords(rng, size))
    cells = []
    for _ in range(size // 2):
        if rng.integers(2):
            x = next(xs)
            cells.extend([(x, next(ys)), (x, next(ys))])
        else:
            y = next(ys)
            cells.extend([(next(xs), y), (next(xs), y)])
    if size % 2:
        cells.append((next(xs), next(ys)))
    return cells


def _random_noarray(
    rng: np.random.Generator, size: int, max_retries: int
) -> List[Tuple[int, int]]:
    """Uniform points on a grid coarse enough to produce shared coordinates; a point is
    rejected when it would become, or give its neighbours, both a column and a row mate."""
    digits = max(1, math.ceil(math.log10(size + 1)))
    step = COORD_SCALE // 10**digits
    columns: Dict[int, Set[int]] = {}
    rows: Dict[int, Set[int]] = {}
    taken: Set[Tuple[int, int]] = set()
    cells: List[Tuple[int, int]] = []

    def has_row_mate(cell: Tuple[int, int]) -> bool:
        return len(rows.get(cell[1], ())) > 1

    def has_column_mate(cell: Tuple[int, int]) -> bool:
        return len(columns.get(cell[0], ())) > 1

    retries = 0
    while len(cells) < size:
        x, y = (int(v) * step for v in rng.integers(10**digits, size=2))
        column_mates = {(x, other) for other in columns.get(x, ())}
        row_mates = {(other, y) for other in rows.get(y, ())}
        rejected = (
            (x, y) in taken
            or (column_mates and row_mates)
            or any(has_row_mate(c) for c in column_mates)
            or any(has_column_mate(c) for c in row_mates)
        )
        if rejected:
            retries += 1
            if retries > max_retries:
                raise GenerationFailedError(
                    f"random_noarray: {max_retries} rejections before reaching {size} points"
                )
            continue
        taken.add((x, y))
        columns.setdefault(x, set()).add(y)
        rows.setdefault(y, set()).add(x)
        cells.append((x, y))
    return cells


def _function_values(
    rng: np.random.Generator, xs: np.ndarray, ys: np.ndarray, function: FunctionKind
) -> np.ndarray:
    if function == "zero":
        return np.zeros_like(xs)
    if function == "additive":
        knots = np.linspace(0.0, 1.0, 9)
        g0 = rng.uniform(-1.0, 1.0, size=knots.size)
        h0 = rng.uniform(-1.0, 1.0, size=knots.size)
        return np.interp(xs, knots, g0) + np.interp(ys, knots, h0)
    return np.sin(3.0 * xs) * np.cos(2.0 * ys) + 0.5 * xs * ys


def generate(
    family: Family,
    size: int,
    seed: int = 0,
    function: FunctionKind = "smooth",
    max_retries: int = 100_000,
) -> PlaneSample:
    """Synthetic sample without arrays on three points, reproducible from ``seed``.

    monotone_curve: x and y both strictly increasing, no shared coordinates.
    coordinate_pairs: disjoint pairs sharing an x or a y, never chained.
    random_noarray: rejection-sampled grid points.
    """
    if size < 1:
        raise ValueError(f"size must be at least 1, got {size}")
    rng = np.random.default_rng(seed)
    if family == "monotone_curve":
        cells = _monotone_curve(rng, size)
    elif family == "coordinate_pairs":
        cells = _coordinate_pairs(rng, size)
    elif family == "random_noarray":
        cells = _random_noarray(rng, size, max_retries)
    else:
        raise ValueError(f"unknown family: {family}")

    xs = np.array([x / COORD_SCALE for x, _ in cells])
    ys = np.array([y / COORD_SCALE for _, y in cells])
    fvals = _function_values(rng, xs, ys, function)
    sample = PlaneSample(
        tuple(
            SamplePoint(Fraction(x, COORD_SCALE), Fraction(y, COORD_SCALE), float(f))
            for (x, y), f in zip(cells, fvals)
        )
    )

    witness = detect_three_array(sample)
    if witness is not None:
        raise GenerationFailedError(f"{family} produced an array: {witness}")
    logger.debug(f"generated {family} size={size} seed={seed} function={function}")
    return sample
