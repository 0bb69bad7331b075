import logging
import sys
from dataclasses import asdict, dataclass
from typing import Optional

from Sepdec.utils.settings import get_settings

ROOT_LOGGER_NAME = "Sepdec"
TRACE_LOGGER_NAME = "Sepdec.trace"


@dataclass(frozen=True)
class StepEvent:
    """One finished decomposition step."""

    eps: float
    delta: str
    level: int
    F: int
    vertices: int
    edges: int
    residual_sup: float
    norm_g: float
    norm_h: float


@dataclass(frozen=True)
class IterationEvent:
    """One solver iteration, as written to trace.jsonl."""

    iter: int
    eps: float
    residual_sup: float
    norm_g: float
    norm_h: float
    level_n: int

    def dump(self) -> dict:
        return asdict(self)


class SepdecEventFilter(logging.Filter):
    def filter(self, record):
        return isinstance(record.msg, (StepEvent, IterationEvent))


class ReadableFormatter(logging.Formatter):
    def format(self, record):
        if isinstance(record.msg, StepEvent):
            return self._format_step(record.msg)
        if isinstance(record.msg, IterationEvent):
            return self._format_iteration(record.msg)
        return super().format(record)

    def _format_step(self, event: StepEvent) -> str:
        lines = [
            "-" * 60,
            f"step  eps={event.eps:.6g}  delta={event.delta}  n={event.level}  F={event.F}",
            f"      graph: {event.vertices} vertices, {event.edges} edges",
            f"      residual={event.residual_sup:.6g}  "
            f"|g|={event.norm_g:.6g}  |h|={event.norm_h:.6g}",
        ]
        return "\n".join(lines)

    def _format_iteration(self, event: IterationEvent) -> str:
        return (
            f"iter {event.iter:>3}  eps={event.eps:.6g}  "
            f"residual={event.residual_sup:.6g}  n={event.level_n}"
        )


def setup_logging(level: Optional[str] = None) -> logging.Logger:
    """Route Sepdec diagnostics to stderr.

    ``level`` defaults to SEPDEC_LOG. Plain messages go through the standard format;
    step and iteration events are rendered by ReadableFormatter on the trace logger.
    """
    level_name = (level or get_settings().LOG).upper()

    logger = logging.getLogger(ROOT_LOGGER_NAME)
    logger.setLevel(level_name)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setFormatter(
        logging.Formatter("%(asctime)s - %(levelname)s - %(name)s - %(message)s")
    )
    logger.addHandler(stream_handler)

    # Events get their own handler so they are not printed twice.
    trace_logger = logging.getLogger(TRACE_LOGGER_NAME)
    trace_logger.propagate = False
    trace_logger.setLevel(level_name)
    for handler in list(trace_logger.handlers):
        trace_logger.removeHandler(handler)
    trace_handler = logging.StreamHandler(sys.stderr)
    trace_handler.setFormatter(ReadableFormatter())
    trace_handler.addFilter(SepdecEventFilter())
    trace_logger.addHandler(trace_handler)

    return logger
