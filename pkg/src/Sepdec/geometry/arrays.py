from collections import defaultdict
from typing import Dict, List, Optional

import numpy as np

from Sepdec.geometry.sample import ArrayWitness, ExactCoord, PlaneSample


def _group(coords: List[ExactCoord]) -> Dict[ExactCoord, List[int]]:
    groups: Dict[ExactCoord, List[int]] = defaultdict(list)
    for index, value in enumerate(coords):
        groups[value].append(index)
    return groups


def detect_three_array(sample: PlaneSample) -> Optional[ArrayWitness]:
    """Find a point sharing its x with one point and its y with another.

    Groups points by exact x and by exact y, so the scan is linear in the sample size.
    The witness returned is the smallest by (a2, a1, a3).
    """
    by_x = _group(sample.xs)
    by_y = _group(sample.ys)
    for a2, point in enumerate(sample.points):
        column = [i for i in by_x[point.x] if i != a2]
        row = [i for i in by_y[point.y] if i != a2]
        if not column or not row:
            continue
        first_column, first_row = column[0], row[0]
        if first_column < first_row:
            return ArrayWitness(a1=first_column, a2=a2, a3=first_row)
        return ArrayWitness(a1=first_row, a2=a2, a3=first_column)
    return None


def is_array(sample: PlaneSample, a1: int, a2: int, a3: int) -> bool:
    """Direct check of the definition for an ordered triple of indices."""
    p1, p2, p3 = sample.points[a1], sample.points[a2], sample.points[a3]
    first_vertical = p1.x == p2.x and p1.y != p2.y
    first_horizontal = p1.y == p2.y and p1.x != p2.x
    second_vertical = p2.x == p3.x and p2.y != p3.y
    second_horizontal = p2.y == p3.y and p2.x != p3.x
    return (first_vertical and second_horizontal) or (
        first_horizontal and second_vertical
    )


def _ranks(coords: List[ExactCoord]) -> np.ndarray:
    order = {value: rank for rank, value in enumerate(sorted(set(coords)))}
    return np.array([order[value] for value in coords], dtype=np.int64)


def scan_three_array_bruteforce(sample: PlaneSample) -> Optional[ArrayWitness]:
    """Scan every ordered triple (a1, a2, a3); the reference for detect_three_array.

    For each corner a2 the full a1 x a3 table is formed, so the work is cubic.
    """
    xr, yr = _ranks(sample.xs), _ranks(sample.ys)
    for a2 in range(len(sample)):
        vertical = (xr == xr[a2]) & (yr != yr[a2])
        horizontal = (yr == yr[a2]) & (xr != xr[a2])
        table = np.outer(vertical, horizontal) | np.outer(horizontal, vertical)
        hits = np.argwhere(table)
        if len(hits):
            a1, a3 = (int(v) for v in hits[0])
            return ArrayWitness(a1=a1, a2=a2, a3=a3)
    return None
