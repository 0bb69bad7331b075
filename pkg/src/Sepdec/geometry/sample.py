import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from Sepdec.errors import SampleFormatError
from Sepdec.utils.io import format_exact, parse_exact

# Plane coordinates are exact rationals; cell indices and projections compare exactly.
ExactCoord = Fraction


def cell_index(coord: ExactCoord, level: int) -> int:
    """Index i of the half-open cell [i/2^n, (i+1)/2^n) containing ``coord``."""
    return math.floor(coord * 2**level)


class SamplePoint(NamedTuple):
    x: ExactCoord
    y: ExactCoord
    fval: float


@dataclass(frozen=True)
class ArrayWitness:
    """Indices of an array on three points; ``a2`` is the corner."""

    a1: int
    a2: int
    a3: int

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.a1, self.a2, self.a3)


@dataclass(frozen=True)
class PlaneSample:
    """A finite sample of the compactum with the function values attached.

    Row order is the point index order; every algorithm that breaks ties does so by index.
    """

    points: Tuple[SamplePoint, ...]

    def __post_init__(self):
        if not self.points:
            raise SampleFormatError("sample must contain at least one point")
        seen = set()
        for index, point in enumerate(self.points):
            if not math.isfinite(point.fval):
                raise SampleFormatError(f"point {index}: f must be finite")
            key = (point.x, point.y)
            if key in seen:
                raise SampleFormatError(
                    f"point {index}: duplicate plane point "
                    f"({format_exact(point.x)}, {format_exact(point.y)})"
                )
            seen.add(key)

    @classmethod
    def from_points(
        cls, points: Iterable[Tuple[Union[str, Fraction, int], Union[str, Fraction, int], float]]
    ) -> "PlaneSample":
        rows = []
        for x, y, fval in points:
            x = parse_exact(x) if isinstance(x, str) else Fraction(x)
            y = parse_exact(y) if isinstance(y, str) else Fraction(y)
            rows.append(SamplePoint(x, y, float(fval)))
        return cls(tuple(rows))

    @classmethod
    def from_csv_text(cls, text: str) -> "PlaneSample":
        rows = []
        reader = csv.reader(io.StringIO(text))
        for line_no, record in enumerate(reader, start=1):
            if not record or not "".join(record).strip():
                continue
            if record[0].lstrip().startswith("#"):
                continue
            fields = [field.strip() for field in record]
            if [f.lower() for f in fields] == ["x", "y", "f"]:
                continue
            if len(fields) != 3:
                raise SampleFormatError(
                    f"line {line_no}: expected 3 fields x,y,f, got {len(fields)}"
                )
            try:
                x, y = parse_exact(fields[0]), parse_exact(fields[1])
                fval = float(fields[2])
            except (ValueError, ZeroDivisionError) as e:
                raise SampleFormatError(f"line {line_no}: {e}") from e
            rows.append(SamplePoint(x, y, fval))
        return cls(tuple(rows))

    @classmethod
    def from_csv(cls, path: Union[str, Path]) -> "PlaneSample":
        with open(path, "r", encoding="utf-8") as f:
            return cls.from_csv_text(f.read())

    def to_csv_text(self) -> str:
        lines = ["# x,y,f"]
        lines.extend(
            f"{format_exact(p.x)},{format_exact(p.y)},{p.fval!r}" for p in self.points
        )
        return "\n".join(lines) + "\n"

    def with_values(self, fvals: Sequence[float]) -> "PlaneSample":
        """Same point set, new function values (used for residuals)."""
        if len(fvals) != len(self.points):
            raise ValueError(
                f"expected {len(self.points)} values, got {len(fvals)}"
            )
        return PlaneSample(
            tuple(SamplePoint(p.x, p.y, float(v)) for p, v in zip(self.points, fvals))
        )

    def __len__(self) -> int:
        return len(self.points)

    @property
    def xs(self) -> List[ExactCoord]:
        return [p.x for p in self.points]

    @property
    def ys(self) -> List[ExactCoord]:
        return [p.y for p in self.points]

    @cached_property
    def fvals(self) -> np.ndarray:
        values = np.array([p.fval for p in self.points], dtype=float)
        values.setflags(write=False)
        return values

    @cached_property
    def bounding_box(self) -> Tuple[ExactCoord, ExactCoord, ExactCoord, ExactCoord]:
        """(xmin, xmax, ymin, ymax)."""
        xs, ys = self.xs, self.ys
        return (min(xs), max(xs), min(ys), max(ys))

    def coordinates(self, index: int) -> Tuple[str, str]:
        point = self.points[index]
        return (format_exact(point.x), format_exact(point.y))

    def find(self, x: ExactCoord, y: ExactCoord) -> Optional[int]:
        for index, point in enumerate(self.points):
            if point.x == x and point.y == y:
                return index
        return None
