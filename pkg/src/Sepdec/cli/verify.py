import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from Sepdec.errors import NotDecomposableError, VerificationFailedError
from Sepdec.geometry.arrays import detect_three_array, scan_three_array_bruteforce
from Sepdec.geometry.sample import PlaneSample
from Sepdec.lattice.graph import build_graph, classify_edges
from Sepdec.lattice.resolution import hv_separation
from Sepdec.oracle.exact import exact_decompose_finite
from Sepdec.oracle.path_condition import (
    MAX_EXHAUSTIVE_VERTICES,
    verify_theorem1_exhaustive,
)
from Sepdec.step.decompose_step import StepResult
from Sepdec.step.piecewise_linear import PiecewiseLinear

logger = logging.getLogger(__name__)

# brute force is cubic in the sample size
MAX_BRUTEFORCE_POINTS = 300
# simple-path enumeration grows exponentially with the length bound
MAX_PROXY_PATH_LENGTH = 8


@dataclass
class VerificationReport:
    checks: Dict[str, Dict[str, Any]] = field(default_factory=dict)

    def record(self, name: str, ok: Optional[bool], detail: str = "") -> None:
        """``ok=None`` marks a check that was skipped."""
        self.checks[name] = {"ok": ok, "detail": detail}
        if ok is False:
            logger.warning(f"verify {name} failed: {detail}")

    @property
    def ok(self) -> bool:
        return all(check["ok"] is not False for check in self.checks.values())

    @property
    def failures(self) -> Dict[str, str]:
        return {k: v["detail"] for k, v in self.checks.items() if v["ok"] is False}

    def raise_for_failures(self) -> None:
        if not self.ok:
            raise VerificationFailedError(self.failures)

    def to_json(self) -> Dict[str, Any]:
        return {"ok": self.ok, "checks": self.checks}


def check_detector(sample: PlaneSample, report: VerificationReport) -> bool:
    """Record the detector (and, on small samples, its brute-force agreement); True
    when the sample is array-free."""
    witness = detect_three_array(sample)
    if len(sample) <= MAX_BRUTEFORCE_POINTS:
        brute = scan_three_array_bruteforce(sample)
        report.record(
            "detector_vs_bruteforce",
            (witness is None) == (brute is None),
            f"detector={witness} bruteforce={brute}",
        )
    else:
        report.record(
            "detector_vs_bruteforce",
            None,
            f"skipped above {MAX_BRUTEFORCE_POINTS} points",
        )
    report.record("no_array", witness is None, "" if witness is None else str(witness))
    return witness is None


def check_against_oracle(
    sample: PlaneSample,
    g: PiecewiseLinear,
    h: PiecewiseLinear,
    tol: float,
    report: VerificationReport,
) -> None:
    try:
        g_exact, h_exact = exact_decompose_finite(sample)
    except NotDecomposableError as e:
        report.record("oracle_exact", False, str(e))
        return
    report.record("oracle_exact", True, f"{len(g_exact)} x-values, {len(h_exact)} y-values")

    gap = max(
        abs(float(g_exact[p.x] + h_exact[p.y]) - g.evaluate(p.x) - h.evaluate(p.y))
        for p in sample.points
    )
    report.record("oracle_agreement", gap <= tol * (1 + 1e-9), f"max gap {gap:.6g}")


def check_path_condition_proxy(
    sample: PlaneSample, steps: Sequence[StepResult], report: VerificationReport
) -> None:
    """On graphs small enough to enumerate, hv_separation > l - 2 must imply that no
    simple bridge path of length <= l exists."""
    checked: List[str] = []
    for step in steps:
        graph = build_graph(sample, step.level)
        if len(graph) > MAX_EXHAUSTIVE_VERTICES:
            continue
        views = classify_edges(graph, step.delta_used)
        separation = hv_separation(views, graph)
        for l in range(1, min(step.F + 1, MAX_PROXY_PATH_LENGTH) + 1):
            if separation > l - 2 and not verify_theorem1_exhaustive(
                graph, views, l, step.delta_used
            ):
                report.record(
                    "path_condition_proxy",
                    False,
                    f"level {step.level}: separation {separation} but a bridge of "
                    f"length <= {l} exists",
                )
                return
        checked.append(str(step.level))
    if checked:
        report.record("path_condition_proxy", True, f"levels {', '.join(checked)}")
    else:
        report.record(
            "path_condition_proxy",
            None,
            f"skipped, graphs above {MAX_EXHAUSTIVE_VERTICES} vertices",
        )


def cross_check(
    sample: PlaneSample,
    g: PiecewiseLinear,
    h: PiecewiseLinear,
    tol: float,
    final_residual: float,
    steps: Sequence[StepResult] = (),
) -> VerificationReport:
    """Compare a finished decomposition with the brute-force detector, the exact
    oracle and the exhaustive path check."""
    report = VerificationReport()
    if not check_detector(sample, report):
        return report
    report.record(
        "pipeline_residual",
        final_residual <= tol,
        f"residual {final_residual:.6g}, tol {tol:.6g}",
    )
    check_against_oracle(sample, g, h, tol, report)
    check_path_condition_proxy(sample, steps, report)
    return report
