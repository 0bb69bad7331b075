import logging
from fractions import Fraction
from typing import Optional

import numpy as np

from Sepdec.errors import NoModulusError
from Sepdec.geometry.sample import ExactCoord, PlaneSample

logger = logging.getLogger(__name__)

# Relative slack used to shortlist float distances before the exact comparison.
_SHORTLIST_RTOL = 1e-9


def sup_norm(sample: PlaneSample) -> float:
    return float(np.max(np.abs(sample.fvals)))


def linf_distance(
    x1: ExactCoord, y1: ExactCoord, x2: ExactCoord, y2: ExactCoord
) -> ExactCoord:
    return max(abs(x1 - x2), abs(y1 - y2))


def closest_rough_pair(sample: PlaneSample, eps: float) -> Optional[ExactCoord]:
    """Smallest exact max-metric distance between two points with |df| >= eps.

    Float distances only shortlist candidates; the minimum itself is taken over exact
    rationals. Returns None when every pair differs by less than eps.
    """
    points = sample.points
    xs = np.array([float(p.x) for p in points])
    ys = np.array([float(p.y) for p in points])
    fv = sample.fvals
    scale = float(max(np.max(np.abs(xs)), np.max(np.abs(ys)), 1.0))
    slack = 1e-12 * scale

    best: Optional[ExactCoord] = None
    best_float = np.inf
    for i in range(len(points) - 1):
        rough = np.abs(fv[i + 1 :] - fv[i]) >= eps
        if not rough.any():
            continue
        dist = np.maximum(np.abs(xs[i + 1 :] - xs[i]), np.abs(ys[i + 1 :] - ys[i]))
        candidates = np.nonzero(rough)[0]
        lowest = dist[candidates].min()
        if lowest > best_float * (1 + _SHORTLIST_RTOL) + slack:
            continue
        bound = lowest * (1 + _SHORTLIST_RTOL) + slack
        for offset in candidates[dist[candidates] <= bound]:
            j = i + 1 + int(offset)
            exact = linf_distance(points[i].x, points[i].y, points[j].x, points[j].y)
            if best is None or exact < best:
                best = exact
                best_float = float(exact)
    return best


def modulus_delta(
    sample: PlaneSample,
    eps: float,
    min_exponent: int = 0,
    max_exponent: int = 60,
) -> Fraction:
    """Largest delta = 2^-k such that points closer than 2*delta differ by less than eps.

    k ranges over [min_exponent, max_exponent]. Raises NoModulusError carrying the floor
    2^-max_exponent when no k qualifies.
    """
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")

    nearest = closest_rough_pair(sample, eps)
    if nearest is None:
        delta = Fraction(2) ** -min_exponent
        logger.debug(f"modulus: no pair with |df| >= {eps}; delta = {delta}")
        return delta

    for k in range(min_exponent, max_exponent + 1):
        delta = Fraction(2) ** -k
        if 2 * delta <= nearest:
            logger.debug(f"modulus: closest rough pair at {nearest}; delta = {delta}")
            return delta
    raise NoModulusError(eps, Fraction(2) ** -max_exponent)
