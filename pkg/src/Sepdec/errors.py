from typing import TYPE_CHECKING, Any, Dict, Optional, Tuple

if TYPE_CHECKING:
    from Sepdec.geometry.sample import ArrayWitness


class SepdecError(Exception):
    """Base class for every failure raised by the library."""


class SampleFormatError(SepdecError, ValueError):
    """The input CSV (or PL CSV) could not be parsed."""


class ArrayPresentError(SepdecError):
    """The sample contains an array on three points."""

    def __init__(
        self,
        witness: "ArrayWitness",
        coordinates: Tuple[Tuple[str, str], Tuple[str, str], Tuple[str, str]],
    ):
        self.witness = witness
        self.coordinates = coordinates
        pairs = " ".join(f"{x},{y}" for x, y in coordinates)
        super().__init__(f"sample contains a 3-point array: {pairs}")


class NoModulusError(SepdecError):
    """No dyadic delta in the configured range satisfies the continuity condition."""

    def __init__(self, eps: float, floor_delta: Any):
        self.eps = eps
        self.floor_delta = floor_delta
        super().__init__(
            f"no dyadic delta >= {floor_delta} separates |df| < {eps} on the sample"
        )


class ResolutionExhaustedError(SepdecError):
    """No lattice level up to max_n meets the width and separation conditions."""

    def __init__(self, max_n: int, delta: Any, F: int, last_separation: Any = None):
        self.max_n = max_n
        self.delta = delta
        self.F = F
        self.last_separation = last_separation
        super().__init__(
            f"no level n <= {max_n} qualifies for delta={delta}, F={F} "
            f"(separation at max_n: {last_separation})"
        )


class GuaranteeViolatedError(SepdecError, AssertionError):
    """A proved inequality failed at runtime."""

    def __init__(self, condition: str, detail: str, where: Optional[Any] = None):
        self.condition = condition
        self.detail = detail
        self.where = where
        super().__init__(f"{condition} violated at {where}: {detail}")


class NotConvergedError(SepdecError):
    """max_iter was reached with the residual still above tol."""

    def __init__(self, result: Any):
        self.result = result
        super().__init__(
            f"not converged: residual {result.final_residual} after "
            f"{len(result.trace)} iterations"
        )


class NotDecomposableError(SepdecError):
    """The finite sample admits no exact additive decomposition."""

    def __init__(self, point_index: int, mismatch: Any):
        self.point_index = point_index
        self.mismatch = mismatch
        super().__init__(
            f"f is not additive on the alignment component of point {point_index} "
            f"(alternating sum {mismatch})"
        )


class TooLargeError(SepdecError):
    """Exhaustive enumeration was asked for a graph above the vertex bound."""


class GenerationFailedError(SepdecError):
    """Rejection sampling ran out of retries."""


class VerificationFailedError(SepdecError):
    """A cross-check between the pipeline and the oracle disagreed."""

    def __init__(self, failures: Dict[str, str]):
        self.failures = failures
        super().__init__(
            "verification failed: " + "; ".join(f"{k}: {v}" for k, v in failures.items())
        )


EXIT_CODES = {
    "ok": 0,
    "io": 1,
    "array_present": 2,
    "not_converged": 3,
    "resolution_exhausted": 4,
    "verification_failed": 5,
    "guarantee_violated": 6,
}


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the CLI exit status."""
    if isinstance(error, ArrayPresentError):
        return EXIT_CODES["array_present"]
    if isinstance(error, NotConvergedError):
        return EXIT_CODES["not_converged"]
    if isinstance(error, ResolutionExhaustedError):
        return EXIT_CODES["resolution_exhausted"]
    if isinstance(error, VerificationFailedError):
        return EXIT_CODES["verification_failed"]
    if isinstance(error, (GuaranteeViolatedError, NoModulusError, NotDecomposableError)):
        return EXIT_CODES["guarantee_violated"]
    return EXIT_CODES["io"]
