import math
from collections import deque
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from Sepdec.cli.generate import generate
from Sepdec.errors import ArrayPresentError
from Sepdec.geometry.modulus import modulus_delta, sup_norm
from Sepdec.geometry.sample import PlaneSample
from Sepdec.lattice.graph import build_graph, classify_edges
from Sepdec.lattice.resolution import find_resolution
from Sepdec.step.augmented import ChainVertex, bucket, build_augmented, compute_F
from Sepdec.step.decompose_step import decompose_step, evaluate_residuals
from Sepdec.step.fibers import extend_pl, fiber_functions, fiber_representatives
from Sepdec.step.potential import discrete_g, scan_theorem2_conditions
from Sepdec.step.vertex_function import (
    VertexFunction,
    check_short_edge_lemma,
    sample_f,
)

QUARTER = Fraction(1, 4)


def _staircase(values):
    # level 4, delta 1/4: A-B long horizontal, B-C short, C-D long vertical
    coords = [
        (Fraction(0), Fraction(0)),
        (Fraction(8, 16), Fraction(0)),
        (Fraction(9, 16), Fraction(2, 16)),
        (Fraction(10, 16), Fraction(10, 16)),
    ]
    sample = PlaneSample.from_points([(x, y, f) for (x, y), f in zip(coords, values)])
    graph = build_graph(sample, 4)
    return sample, graph, classify_edges(graph, QUARTER)


A, B, C, D = (0, 0), (8, 0), (9, 2), (10, 10)


def test_sample_f_uses_representatives():
    sample = PlaneSample.from_points([("0.3", "0.3", 5.0), ("0.1", "0.2", 7.0)])
    graph = build_graph(sample, 1)
    assert sample_f(sample, graph)[(0, 0)] == 5.0


def test_short_edge_lemma():
    _, graph, views = _staircase([1.5, 1.2, 0.5, 0.3])
    fn = VertexFunction(graph, {A: 1.5, B: 1.2, C: 0.5, D: 0.3})
    assert check_short_edge_lemma(fn, views, 1.0)
    # the bound is strict
    assert not check_short_edge_lemma(fn, views, 0.7)


@pytest.mark.parametrize(
    "f_norm, eps, expected",
    [(1.0, 0.3, 3), (0.0, 0.5, 0), (1.0, 0.25, 4), (0.99, 0.25, 3)],
)
def test_compute_F(f_norm, eps, expected):
    assert compute_F(f_norm, eps) == expected


def test_compute_F_rejects_nonpositive_eps():
    with pytest.raises(ValueError):
        compute_F(1.0, 0.0)


@given(st.floats(0, 100), st.floats(1e-3, 10))
@settings(max_examples=100)
def test_bucket_brackets_value(value, eps):
    i = bucket(value, eps)
    assert i * eps <= value < (i + 1) * eps


def test_build_augmented_trivial_without_horizontal_anchors():
    sample = PlaneSample.from_points([("0", "0", 1.0), ("0", "0.5", -1.0)])
    graph = build_graph(sample, 3)
    views = classify_edges(graph, QUARTER)
    fn = sample_f(sample, graph)
    plus = build_augmented(graph, views, fn, "plus", 0.5, 2)
    assert plus.trivial
    assert plus.base_vertices == {(0, 0)}
    assert plus.chain == ()


def test_build_augmented_attachment_levels():
    sample = PlaneSample.from_points([("0", "0", 2.5), ("0.5", "0", 0.5)])
    graph = build_graph(sample, 3)
    views = classify_edges(graph, QUARTER)
    fn = sample_f(sample, graph)
    augmented = build_augmented(graph, views, fn, "plus", 1.0, 3)
    assert not augmented.trivial
    assert augmented.top == ChainVertex(3)
    assert augmented.graph.has_edge(ChainVertex(2), (0, 0))
    assert augmented.graph.has_edge(ChainVertex(0), (4, 0))
    # the long edge itself is not part of the augmented graph
    assert not augmented.graph.has_edge((0, 0), (4, 0))
    assert augmented.distances[(0, 0)] == 2
    assert augmented.distances[(4, 0)] == 4
    augmented.check_edges(1.0)


def test_build_augmented_caps_attachment_at_top():
    sample = PlaneSample.from_points([("0", "0", 5.0), ("0.5", "0", 4.5)])
    graph = build_graph(sample, 3)
    views = classify_edges(graph, QUARTER)
    augmented = build_augmented(graph, views, sample_f(sample, graph), "plus", 1.0, 3)
    assert augmented.graph.has_edge(ChainVertex(3), (0, 0))
    assert augmented.graph.has_edge(ChainVertex(3), (4, 0))


def test_discrete_g_staircase():
    _, graph, views = _staircase([1.5, 1.2, 0.5, 0.3])
    fn = VertexFunction(graph, {A: 1.5, B: 1.2, C: 0.5, D: 0.3})
    gn = discrete_g(graph, views, fn, 1.0, QUARTER, 1)
    # A and B hang off w_F directly: g = min(f, F eps)
    assert gn[A] == 1.0
    assert gn[B] == 1.0
    # C is two steps from w_F, D is unreachable: both on long vertical edges
    assert gn[C] == 0.0
    assert gn[D] == 0.0
    report = scan_theorem2_conditions(graph, views, fn, gn, 1.0)
    assert report.ok
    assert set(report.passed) == {"cond_1a", "cond_1b", "cond_1c", "cond_2", "sandwich"}


def test_discrete_g_is_odd():
    _, graph, views = _staircase([1.5, 1.2, 0.5, 0.3])
    values = {A: 1.5, B: 1.2, C: 0.5, D: 0.3}
    plus = discrete_g(graph, views, VertexFunction(graph, values), 1.0, QUARTER, 1)
    minus = discrete_g(
        graph,
        views,
        VertexFunction(graph, {u: -v for u, v in values.items()}),
        1.0,
        QUARTER,
        1,
    )
    assert all(minus[u] == -plus[u] for u in graph.vertices)


def test_discrete_g_zero_without_long_horizontal_edges():
    sample = PlaneSample.from_points(
        [(Fraction(k, 4), Fraction(k, 4), float(k)) for k in range(4)]
    )
    graph = build_graph(sample, 3)
    views = classify_edges(graph, QUARTER)
    gn = discrete_g(graph, views, sample_f(sample, graph), 1.0, QUARTER, 3)
    assert all(gn[u] == 0.0 for u in graph.vertices)


def test_discrete_g_rejects_mismatched_delta():
    _, graph, views = _staircase([1.5, 1.2, 0.5, 0.3])
    fn = VertexFunction(graph, {A: 1.5, B: 1.2, C: 0.5, D: 0.3})
    with pytest.raises(ValueError):
        discrete_g(graph, views, fn, 1.0, Fraction(1, 8), 1)


def test_scan_flags_a_bad_potential():
    _, graph, views = _staircase([1.5, 1.2, 0.5, 0.3])
    fn = VertexFunction(graph, {A: 1.5, B: 1.2, C: 0.5, D: 0.3})
    bad = VertexFunction(graph, {A: 0.0, B: 1.2, C: 0.5, D: 0.0})
    report = scan_theorem2_conditions(graph, views, fn, bad, 1.0)
    assert not report.ok
    assert not report.passed["cond_1b"]
    assert not report.passed["cond_1c"]
    assert report.passed["cond_2"]


def test_fiber_functions_staircase():
    _, graph, views = _staircase([1.5, 1.2, 0.5, 0.3])
    fn = VertexFunction(graph, {A: 1.5, B: 1.2, C: 0.5, D: 0.3})
    gn = discrete_g(graph, views, fn, 1.0, QUARTER, 1)
    by_column, by_row = fiber_representatives(graph)
    assert by_row[0] == A
    g_grid, h_grid = fiber_functions(graph, fn, gn, 1.0)
    assert g_grid == {
        Fraction(0): 1.0,
        Fraction(1, 2): 1.0,
        Fraction(9, 16): 0.0,
        Fraction(5, 8): 0.0,
    }
    assert h_grid == {Fraction(0): 0.5, Fraction(1, 8): 0.5, Fraction(5, 8): 0.3}


def test_extend_pl_joins_neighbours_and_holds_across_gaps():
    pl = extend_pl({Fraction(0): 1.0, Fraction(1, 8): 2.0}, 3)
    assert pl.breakpoints == ((Fraction(0), 1.0), (Fraction(1, 8), 2.0))

    pl = extend_pl({Fraction(0): 1.0, Fraction(1, 2): 3.0}, 3)
    assert pl.coordinates == (Fraction(0), Fraction(1, 8), Fraction(1, 2))
    assert pl.evaluate(Fraction(1, 16)) == 1.0
    assert pl.evaluate(Fraction(5, 16)) == pytest.approx(2.0)
    assert pl.evaluate(-1) == 1.0
    assert pl.evaluate(2) == 3.0

    with pytest.raises(ValueError):
        extend_pl({}, 3)


def test_decompose_step_zero_function():
    sample = PlaneSample.from_points([("0", "0", 0.0), ("0.5", "0.25", 0.0)])
    step = decompose_step(sample, 1.0)
    assert step.F == 0
    assert step.residual_sup == 0.0
    assert step.norm_g == 0.0 and step.norm_h == 0.0


def test_decompose_step_two_point_column():
    sample = PlaneSample.from_points([("0", "0", 1.0), ("0", "0.5", -1.0)])
    step = decompose_step(sample, 0.5)
    assert step.delta_used == QUARTER
    assert step.F == 2
    assert step.level == 3
    assert step.norm_g == 0.0
    assert step.residual_sup == 0.0
    assert step.h.evaluate(0) == 1.0
    assert step.h.evaluate(Fraction(1, 2)) == -1.0
    assert all(step.certificate.values())


def test_decompose_step_rejects_arrays():
    sample = PlaneSample.from_points([("0", "0", 1.0), ("0", "1", 0.0), ("1", "0", 0.0)])
    with pytest.raises(ArrayPresentError) as info:
        decompose_step(sample, 0.5)
    assert info.value.coordinates == (("0", "1"), ("0", "0"), ("1", "0"))


def test_decompose_step_on_monotone_curve():
    sample = generate("monotone_curve", 200, seed=7)
    f_norm = sup_norm(sample)
    step = decompose_step(sample, f_norm / 12)
    assert step.residual_sup <= f_norm / 2 + 1e-9
    assert step.norm_g <= f_norm + 1e-9
    assert step.norm_h <= 2 * f_norm + 1e-9
    recomputed = evaluate_residuals(sample, step.g, step.h)
    assert np.array_equal(recomputed, step.residuals)


@given(
    st.sampled_from(["coordinate_pairs", "random_noarray", "monotone_curve"]),
    st.integers(1, 30),
    st.integers(0, 2**16),
    st.sampled_from([3, 6, 12]),
)
@settings(max_examples=20, deadline=None)
def test_decompose_step_guarantees(family, size, seed, divisor):
    sample = generate(family, size, seed=seed, function="additive")
    f_norm = sup_norm(sample)
    assume(f_norm > 0)
    eps = f_norm / divisor
    step = decompose_step(sample, eps)
    slack = 1e-9 * f_norm
    assert step.residual_sup <= 6 * eps + slack
    assert step.norm_g <= f_norm + slack
    assert step.norm_h <= 2 * f_norm + slack


small_cells = st.lists(
    st.tuples(st.integers(0, 31), st.integers(0, 31)), min_size=1, max_size=20, unique=True
)
deltas = st.sampled_from([Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)])


def _cell(point, level):
    return (math.floor(point.x * 2**level), math.floor(point.y * 2**level))


def _linked(u, v):
    return abs(u[0] - v[0]) <= 1 or abs(u[1] - v[1]) <= 1


def _is_short(u, v, delta, level):
    return max(abs(u[0] - v[0]), abs(u[1] - v[1])) < delta * 2**level


@given(small_cells, st.integers(0, 5))
@settings(max_examples=50, deadline=None)
def test_sample_f_matches_per_cell_scan(cells, level):
    sample = PlaneSample.from_points(
        [(Fraction(x, 32), Fraction(y, 32), float(k)) for k, (x, y) in enumerate(cells)]
    )
    fn = sample_f(sample, build_graph(sample, level))
    expected = {}
    for u in {_cell(p, level) for p in sample.points}:
        first = next(p for p in sample.points if _cell(p, level) == u)
        expected[u] = first.fval
    assert fn.values == expected


@given(
    small_cells,
    st.integers(2, 5),
    deltas,
    st.lists(st.integers(-20, 20), min_size=20, max_size=20),
    st.sampled_from([0.5, 1.0, 2.0]),
)
@settings(max_examples=80, deadline=None)
def test_short_edge_lemma_matches_exhaustive_scan(cells, level, delta, raw, eps):
    sample = PlaneSample.from_points([(Fraction(x, 32), Fraction(y, 32), 0.0) for x, y in cells])
    graph = build_graph(sample, level)
    fn = VertexFunction(graph, {u: raw[k] / 4 for k, u in enumerate(graph.vertices)})
    expected = all(
        abs(fn[u] - fn[v]) < eps
        for u, v in combinations(graph.vertices, 2)
        if _linked(u, v) and _is_short(u, v, delta, level)
    )
    assert check_short_edge_lemma(fn, classify_edges(graph, delta), eps) == expected


def _augmented_oracle(graph, fn, sign, eps, F, delta):
    level = graph.level
    vertices = graph.vertices
    base = {u for u in vertices if (fn[u] >= 0) == (sign == "plus")}
    pairs = [(u, v) for u, v in combinations(vertices, 2) if _linked(u, v)]
    v_hor = set()
    for u, v in pairs:
        if not _is_short(u, v, delta, level) and abs(u[1] - v[1]) <= 1:
            v_hor.update((u, v))
    anchors = base & v_hor
    if not anchors:
        return base, None
    chain = [ChainVertex(i) for i in range(F + 1)]
    edges = {
        frozenset((u, v))
        for u, v in pairs
        if u in base and v in base and _is_short(u, v, delta, level)
    }
    edges |= {frozenset(link) for link in zip(chain, chain[1:])}
    for u in anchors:
        edges.add(frozenset((chain[min(math.floor(abs(fn[u]) / eps), F)], u)))
    return base, edges


def _distances_from(edges, source):
    adjacency = {}
    for edge in edges:
        a, b = tuple(edge)
        adjacency.setdefault(a, set()).add(b)
        adjacency.setdefault(b, set()).add(a)
    lengths = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adjacency.get(u, ()):
            if v not in lengths:
                lengths[v] = lengths[u] + 1
                queue.append(v)
    return lengths


@given(
    small_cells,
    st.integers(2, 5),
    deltas,
    # odd sixteenths never sit on a bucket boundary for these eps
    st.lists(st.integers(-40, 39), min_size=20, max_size=20),
    st.sampled_from([0.25, 0.5, 1.0]),
    st.integers(0, 6),
    st.sampled_from(["plus", "minus"]),
)
@settings(max_examples=150, deadline=None)
def test_build_augmented_matches_reconstruction(cells, level, delta, raw, eps, F, sign):
    sample = PlaneSample.from_points([(Fraction(x, 32), Fraction(y, 32), 0.0) for x, y in cells])
    graph = build_graph(sample, level)
    fn = VertexFunction(
        graph, {u: (2 * raw[k] + 1) / 16 for k, u in enumerate(graph.vertices)}
    )
    augmented = build_augmented(graph, classify_edges(graph, delta), fn, sign, eps, F)
    base, edges = _augmented_oracle(graph, fn, sign, eps, F, delta)

    assert augmented.base_vertices == base
    if edges is None:
        assert augmented.trivial
        assert augmented.graph.number_of_edges() == 0
        return

    assert not augmented.trivial
    assert {frozenset(e) for e in augmented.graph.edges} == edges
    lengths = _distances_from(edges, ChainVertex(F))
    assert augmented.reachable == set(lengths)
    for u in base:
        assert augmented.distances[u] == lengths.get(u, 0)
        assert augmented.magnitudes[u] == abs(fn[u])


@given(
    st.sampled_from(["coordinate_pairs", "random_noarray", "monotone_curve"]),
    st.integers(2, 40),
    st.integers(0, 2**16),
    st.sampled_from(["smooth", "additive"]),
    st.sampled_from([12, 24]),
)
@settings(max_examples=30, deadline=None)
def test_fiber_functions_meet_their_bounds(family, size, seed, function, divisor):
    sample = generate(family, size, seed=seed, function=function)
    f_norm = sup_norm(sample)
    assume(f_norm > 0)
    eps = f_norm / divisor
    delta = modulus_delta(sample, eps)
    F = compute_F(f_norm, eps)
    choice = find_resolution(sample, delta, F, 24)
    graph = choice.graph
    fn = sample_f(sample, graph)
    gn = discrete_g(graph, choice.views, fn, eps, delta, F)
    g_grid, h_grid = fiber_functions(graph, fn, gn, eps)

    slack = 1e-12 * f_norm
    width = graph.cell_width
    assert set(g_grid) == {graph.p(u) for u in graph.vertices}
    assert set(h_grid) == {graph.q(u) for u in graph.vertices}
    for u in graph.vertices:
        assert abs(fn[u] - g_grid[graph.p(u)] - h_grid[graph.q(u)]) <= 3 * eps + slack
    for x in g_grid:
        if x + width in g_grid:
            assert abs(g_grid[x] - g_grid[x + width]) <= eps + slack
    for y in h_grid:
        if y + width in h_grid:
            assert abs(h_grid[y] - h_grid[y + width]) <= 2 * eps + slack
