import bisect
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

from Sepdec.errors import SampleFormatError
from Sepdec.utils.io import format_exact, parse_exact, write_text_atomic

PL_HEADER = "# pl v1 tails=constant"

Number = Union[Fraction, int, float, str]


def _exact(x: Number) -> Fraction:
    return parse_exact(x) if isinstance(x, str) else Fraction(x)


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous function on the real line given by its breakpoints.

    Linear between consecutive breakpoints, constant beyond the first and the last.
    Coordinates are exact; values are floats.
    """

    breakpoints: Tuple[Tuple[Fraction, float], ...]

    def __post_init__(self):
        if not self.breakpoints:
            raise ValueError("a piecewise-linear function needs at least one breakpoint")
        for (c0, _), (c1, _) in zip(self.breakpoints, self.breakpoints[1:]):
            if not c0 < c1:
                raise ValueError(
                    f"breakpoint coordinates must increase strictly: {c0} !< {c1}"
                )

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[Number, float]]) -> "PiecewiseLinear":
        return cls(tuple((_exact(c), float(v)) for c, v in pairs))

    @classmethod
    def zero(cls) -> "PiecewiseLinear":
        return cls(((Fraction(0), 0.0),))

    @cached_property
    def coordinates(self) -> Tuple[Fraction, ...]:
        return tuple(c for c, _ in self.breakpoints)

    @cached_property
    def values(self) -> Tuple[float, ...]:
        return tuple(v for _, v in self.breakpoints)

    def evaluate(self, x: Number) -> float:
        x = _exact(x)
        coords, values = self.coordinates, self.values
        if x <= coords[0]:
            return values[0]
        if x >= coords[-1]:
            return values[-1]
        k = bisect.bisect_right(coords, x) - 1
        v0, v1 = values[k], values[k + 1]
        t = float((x - coords[k]) / (coords[k + 1] - coords[k]))
        value = v0 + t * (v1 - v0)
        # rounding must not leave the segment's value range
        return min(max(value, min(v0, v1)), max(v0, v1))

    def evaluate_many(self, xs: Sequence[float]) -> np.ndarray:
        """Float evaluation for dense plotting; np.interp also holds the tails constant."""
        return np.interp(
            np.asarray(xs, dtype=float),
            np.array([float(c) for c in self.coordinates]),
            np.array(self.values),
        )

    def sup_norm(self) -> float:
        return max(abs(v) for v in self.values)

    def __add__(self, other: "PiecewiseLinear") -> "PiecewiseLinear":
        merged = sorted(set(self.coordinates) | set(other.coordinates))
        return PiecewiseLinear(
            tuple((c, self.evaluate(c) + other.evaluate(c)) for c in merged)
        )

    def to_csv_text(self) -> str:
        lines = [PL_HEADER]
        lines.extend(f"{format_exact(c)},{v!r}" for c, v in self.breakpoints)
        return "\n".join(lines) + "\n"

    def to_csv(self, path: Union[str, Path]) -> None:
        write_text_atomic(path, self.to_csv_text())

    @classmethod
    def from_csv_text(cls, text: str) -> "PiecewiseLinear":
        lines = text.splitlines()
        if not lines or lines[0].strip() != PL_HEADER:
            raise SampleFormatError(f"missing header {PL_HEADER!r}")
        pairs = []
        for line_no, line in enumerate(lines[1:], start=2):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split(",")
            if len(fields) != 2:
                raise SampleFormatError(f"line {line_no}: expected coordinate,value")
            try:
                pairs.append((parse_exact(fields[0]), float(fields[1])))
            except (ValueError, ZeroDivisionError) as e:
                raise SampleFormatError(f"line {line_no}: {e}") from e
        return cls(tuple(pairs))

    @classmethod
    def from_csv(cls, path: Union[str, Path]) -> "PiecewiseLinear":
        with open(path, "r", encoding="utf-8") as f:
            return cls.from_csv_text(f.read())
