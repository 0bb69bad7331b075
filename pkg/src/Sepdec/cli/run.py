import logging
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

from Sepdec.cli.config import RunConfig
from Sepdec.cli.generate import generate
from Sepdec.cli.plotdata import emit_plotdata
from Sepdec.cli.verify import cross_check
from Sepdec.errors import (
    EXIT_CODES,
    ArrayPresentError,
    SepdecError,
    VerificationFailedError,
    exit_code_for,
)
from Sepdec.geometry.sample import PlaneSample
from Sepdec.lattice.graph import build_graph, classify_edges
from Sepdec.lattice.resolution import hv_separation
from Sepdec.solver.solver import decompose
from Sepdec.step.decompose_step import StepResult, decompose_step, ensure_no_array
from Sepdec.step.piecewise_linear import PiecewiseLinear
from Sepdec.utils.io import format_exact, write_json, write_jsonl, write_text_atomic
from Sepdec.utils.logging_utils import IterationEvent

logger = logging.getLogger(__name__)


def load_sample(config: RunConfig) -> PlaneSample:
    if config.input is not None:
        return PlaneSample.from_csv(config.input)
    spec = config.generator
    return generate(spec.family, spec.size, spec.seed, spec.function)


def print_witness(error: ArrayPresentError) -> None:
    for x, y in error.coordinates:
        print(f"{x},{y}")


def step_json(step: StepResult, iteration: int) -> Dict[str, Any]:
    return {
        "iter": iteration,
        "eps": step.eps_used,
        "delta": format_exact(step.delta_used),
        "level": step.level,
        "F": step.F,
        "residual_sup": step.residual_sup,
        "norm_g": step.norm_g,
        "norm_h": step.norm_h,
        "certificate": dict(sorted(step.certificate.items())),
    }


def _write_outputs(
    out: Path,
    g: PiecewiseLinear,
    h: PiecewiseLinear,
    trace: List[IterationEvent],
    report: Dict[str, Any],
) -> None:
    g.to_csv(out / "g.csv")
    h.to_csv(out / "h.csv")
    write_jsonl(out / "trace.jsonl", [event.dump() for event in trace])
    write_json(out / "report.json", report)


def run_decompose(config: RunConfig) -> int:
    """Run one decompose invocation end to end and return its exit status."""
    try:
        sample = load_sample(config)
    except (OSError, ValueError, SepdecError) as e:
        logger.error(f"could not load sample: {e}")
        return EXIT_CODES["io"]

    try:
        if config.single_step:
            step = decompose_step(
                sample,
                config.eps,
                max_n=config.max_n,
                min_exponent=config.min_exponent,
                max_exponent=config.max_exponent,
                rtol=config.rtol,
            )
            outcome = step
            g, h = step.g, step.h
            steps = [step]
            trace = [
                IterationEvent(
                    iter=1,
                    eps=step.eps_used,
                    residual_sup=step.residual_sup,
                    norm_g=step.norm_g,
                    norm_h=step.norm_h,
                    level_n=step.level,
                )
            ]
            # a single step promises 6 eps, not the run tolerance
            target = 6 * step.eps_used
            final_residual = step.residual_sup
            converged = final_residual <= target
            report: Dict[str, Any] = {
                "mode": "single_step",
                "f_norm": step.f_norm,
                "norm_bounds": {},
            }
        else:
            result = decompose(
                sample,
                config.tol,
                config.max_iter,
                max_n=config.max_n,
                contraction_divisor=config.contraction_divisor,
                min_exponent=config.min_exponent,
                max_exponent=config.max_exponent,
                rtol=config.rtol,
            )
            outcome = result
            g, h, steps, trace = result.g_total, result.h_total, result.steps, result.trace
            target = config.tol
            final_residual = result.final_residual
            converged = result.converged
            report = {
                "mode": "iterate",
                "f_norm": result.f_norm,
                "contraction": result.contraction,
                "norm_bounds": result.norm_bounds,
            }
    except ArrayPresentError as e:
        logger.error(str(e))
        print_witness(e)
        return EXIT_CODES["array_present"]
    except SepdecError as e:
        logger.error(str(e))
        return exit_code_for(e)

    report.update(
        {
            "converged": converged,
            "final_residual": final_residual,
            "iterations": len(trace),
            "tol": target,
            "steps": [step_json(step, i) for i, step in enumerate(steps, start=1)],
        }
    )

    status = EXIT_CODES["ok"] if converged else EXIT_CODES["not_converged"]
    if config.verify:
        verification = cross_check(sample, g, h, target, final_residual, steps)
        report["verify"] = verification.to_json()
        if not verification.ok and status == EXIT_CODES["ok"]:
            status = EXIT_CODES["verification_failed"]

    try:
        _write_outputs(config.out, g, h, trace, report)
        if config.plot:
            emit_plotdata(outcome, sample, config.out, config.plot_samples)
    except OSError as e:
        logger.error(f"could not write outputs to {config.out}: {e}")
        return EXIT_CODES["io"]
    return status


def run_generate(
    family: str,
    size: int,
    seed: int,
    function: str,
    out: Path,
    max_retries: int = 100_000,
) -> int:
    try:
        sample = generate(family, size, seed, function, max_retries)
        write_text_atomic(out, sample.to_csv_text())
    except SepdecError as e:
        logger.error(str(e))
        return EXIT_CODES["io"]
    except OSError as e:
        logger.error(f"could not write {out}: {e}")
        return EXIT_CODES["io"]
    return EXIT_CODES["ok"]


def run_graph(input_path: Path, n: int, delta: Fraction, dump: Path) -> int:
    """Dump the level-n lattice graph with its long-edge flags and hv_separation."""
    try:
        sample = PlaneSample.from_csv(input_path)
    except (OSError, ValueError, SepdecError) as e:
        logger.error(f"could not load sample: {e}")
        return EXIT_CODES["io"]
    graph = build_graph(sample, n)
    views = classify_edges(graph, delta)
    separation = hv_separation(views, graph)
    payload = graph.to_json(views)
    payload["delta"] = format_exact(Fraction(delta))
    payload["hv_separation"] = None if math.isinf(separation) else separation
    try:
        write_json(dump, payload)
    except OSError as e:
        logger.error(f"could not write {dump}: {e}")
        return EXIT_CODES["io"]
    return EXIT_CODES["ok"]


def run_verify(config: RunConfig, out: Optional[Path] = None) -> int:
    """Decompose ``config``'s sample and write the cross-check report as verify.json."""
    try:
        sample = load_sample(config)
    except (OSError, ValueError, SepdecError) as e:
        logger.error(f"could not load sample: {e}")
        return EXIT_CODES["io"]
    out = out or config.out / "verify.json"

    try:
        ensure_no_array(sample)
    except ArrayPresentError as e:
        print_witness(e)
        write_json(out, {"ok": False, "array_present": [list(c) for c in e.coordinates]})
        return EXIT_CODES["array_present"]

    try:
        result = decompose(
            sample,
            config.tol,
            config.max_iter,
            max_n=config.max_n,
            contraction_divisor=config.contraction_divisor,
            min_exponent=config.min_exponent,
            max_exponent=config.max_exponent,
            rtol=config.rtol,
        )
    except SepdecError as e:
        logger.error(str(e))
        write_json(out, {"ok": False, "error": str(e)})
        return EXIT_CODES["verification_failed"]

    verification = cross_check(
        sample,
        result.g_total,
        result.h_total,
        config.tol,
        result.final_residual,
        result.steps,
    )
    write_json(out, verification.to_json())
    try:
        verification.raise_for_failures()
    except VerificationFailedError as e:
        logger.error(str(e))
        return exit_code_for(e)
    return EXIT_CODES["ok"]
