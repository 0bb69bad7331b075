import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Union

PathLike = Union[str, Path]


def parse_exact(text: str) -> Fraction:
    """Parse a decimal (or p/q) string into an exact rational.

    Examples:
        >>> parse_exact("0.1")
        Fraction(1, 10)
        >>> parse_exact("-2.5e-1")
        Fraction(-1, 4)
    """
    return Fraction(text.strip())


def format_exact(value: Fraction) -> str:
    """Render a rational as a terminating decimal when it has one, else as ``p/q``.

    Examples:
        >>> format_exact(Fraction(3, 8))
        '0.375'
        >>> format_exact(Fraction(-5, 1))
        '-5'
        >>> format_exact(Fraction(1, 3))
        '1/3'
    """
    value = Fraction(value)
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{value.numerator}/{value.denominator}"

    scale = max(twos, fives)
    digits = abs(value.numerator) * 10**scale // value.denominator
    sign = "-" if value < 0 else ""
    if scale == 0:
        return f"{sign}{digits}"
    text = str(digits).rjust(scale + 1, "0")
    whole, frac = text[:-scale], text[-scale:].rstrip("0")
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"


def write_text_atomic(path: PathLike, content: str) -> None:
    """Write via a temp file in the same directory, then rename over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(content)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def write_json(path: PathLike, payload: Any) -> None:
    write_text_atomic(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def write_jsonl(path: PathLike, rows: Iterable[Any]) -> None:
    write_text_atomic(
        path, "".join(json.dumps(row, sort_keys=True) + "\n" for row in rows)
    )
