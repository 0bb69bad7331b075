import numpy as np
import pytest

from Sepdec.cli.generate import generate
from Sepdec.errors import ArrayPresentError, NotConvergedError
from Sepdec.geometry.modulus import sup_norm
from Sepdec.geometry.sample import PlaneSample
from Sepdec.oracle.exact import exact_decompose_finite
from Sepdec.solver.solver import decompose, evaluate


@pytest.fixture(scope="module")
def curve():
    return generate("monotone_curve", 60, seed=7)


@pytest.fixture(scope="module")
def curve_result(curve):
    return decompose(curve, tol=1e-3, max_iter=32)


def test_zero_function_needs_no_iterations():
    sample = generate("coordinate_pairs", 10, seed=1, function="zero")
    result = decompose(sample, tol=1e-3, max_iter=5)
    assert result.iterations == 0
    assert result.converged
    assert result.final_residual == 0.0
    assert result.g_total.sup_norm() == 0.0


def test_curve_converges(curve, curve_result):
    assert curve_result.converged
    assert curve_result.final_residual <= 1e-3
    assert evaluate(curve_result, curve).sup == pytest.approx(curve_result.final_residual)


def test_trace_stays_under_geometric_envelope(curve, curve_result):
    f_norm = sup_norm(curve)
    rho = curve_result.contraction
    assert rho == 0.5
    for event in curve_result.trace:
        assert event.residual_sup <= f_norm * rho**event.iter * (1 + 1e-9)
    assert [e.iter for e in curve_result.trace] == list(
        range(1, curve_result.iterations + 1)
    )
    # each eps is the entering residual over 12
    assert curve_result.trace[0].eps == pytest.approx(f_norm / 12)


def test_norms_are_summable(curve_result):
    bounds = curve_result.norm_bounds
    assert bounds["norm_g_total"] <= bounds["bound_g_total"]
    assert bounds["norm_h_total"] <= bounds["bound_h_total"]
    assert bounds["norm_g_total"] <= bounds["sum_norm_g"] + 1e-12
    assert bounds["norm_h_total"] <= bounds["sum_norm_h"] + 1e-12


def test_totals_are_sum_of_steps(curve, curve_result):
    g = curve_result.steps[0].g
    h = curve_result.steps[0].h
    for step in curve_result.steps[1:]:
        g, h = g + step.g, h + step.h
    for point in curve.points:
        assert g.evaluate(point.x) == pytest.approx(curve_result.g_total.evaluate(point.x))
        assert h.evaluate(point.y) == pytest.approx(curve_result.h_total.evaluate(point.y))


def test_decompose_is_deterministic(curve, curve_result):
    again = decompose(curve, tol=1e-3, max_iter=32)
    assert again.g_total == curve_result.g_total
    assert again.h_total == curve_result.h_total
    assert again.trace == curve_result.trace


def test_not_converged_reports_or_raises(curve):
    result = decompose(curve, tol=1e-9, max_iter=2)
    assert not result.converged
    assert result.iterations == 2
    with pytest.raises(NotConvergedError) as info:
        decompose(curve, tol=1e-9, max_iter=2, raise_on_failure=True)
    assert info.value.result.iterations == 2


def test_decompose_rejects_arrays_and_bad_arguments(curve):
    corner = PlaneSample.from_points([("0", "0", 1.0), ("0", "1", 0.0), ("1", "0", 0.0)])
    with pytest.raises(ArrayPresentError):
        decompose(corner, tol=1e-3, max_iter=4)
    with pytest.raises(ValueError):
        decompose(curve, tol=0.0, max_iter=4)
    with pytest.raises(ValueError):
        decompose(curve, tol=1e-3, max_iter=0)
    with pytest.raises(ValueError):
        decompose(curve, tol=1e-3, max_iter=4, contraction_divisor=6)


def test_evaluate_reports_mean_of_magnitudes(curve, curve_result):
    report = evaluate(curve_result, curve)
    assert report.mean == pytest.approx(float(np.mean(np.abs(report.residuals))))
    assert report.mean <= report.sup


@pytest.mark.parametrize("family", ["monotone_curve", "coordinate_pairs", "random_noarray"])
@pytest.mark.parametrize("size", [10, 50, 200])
@pytest.mark.parametrize("function", ["smooth", "additive"])
def test_corpus_converges_and_agrees_with_exact_oracle(family, size, function):
    sample = generate(family, size, seed=size + 1, function=function)
    result = decompose(sample, tol=1e-3, max_iter=32)
    assert result.converged
    assert result.iterations <= 20
    assert result.final_residual <= 1e-3

    f_norm = sup_norm(sample)
    for event in result.trace:
        assert event.residual_sup <= f_norm / 2**event.iter * (1 + 1e-9)

    g_exact, h_exact = exact_decompose_finite(sample)
    for p in sample.points:
        exact = float(g_exact[p.x] + h_exact[p.y])
        approx = result.g_total.evaluate(p.x) + result.h_total.evaluate(p.y)
        assert abs(exact - approx) <= 1e-3 * (1 + 1e-9)


@pytest.mark.parametrize("seed", range(1, 31))
def test_additive_samples_are_recovered(seed):
    family = ["monotone_curve", "coordinate_pairs", "random_noarray"][seed % 3]
    sample = generate(family, 40, seed=seed, function="additive")
    result = decompose(sample, tol=1e-3, max_iter=20)
    assert result.converged
    g_exact, h_exact = exact_decompose_finite(sample)
    assert set(g_exact) == set(sample.xs)
    assert set(h_exact) == set(sample.ys)
