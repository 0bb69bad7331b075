from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from Sepdec.cli.generate import generate
from Sepdec.errors import NoModulusError, SampleFormatError
from Sepdec.geometry.arrays import (
    detect_three_array,
    is_array,
    scan_three_array_bruteforce,
)
from Sepdec.geometry.modulus import closest_rough_pair, modulus_delta, sup_norm
from Sepdec.geometry.sample import ArrayWitness, PlaneSample, cell_index


def _sample(rows):
    return PlaneSample.from_points(rows)


# small integer grids make shared coordinates (and arrays) likely
grid_points = st.lists(
    st.tuples(st.integers(0, 5), st.integers(0, 5)), min_size=1, max_size=14, unique=True
)


def test_detect_three_array_finds_corner():
    sample = _sample([("0", "0", 0.0), ("0", "1", 0.0), ("1", "0", 0.0)])
    witness = detect_three_array(sample)
    assert witness == ArrayWitness(a1=1, a2=0, a3=2)
    assert is_array(sample, *witness.as_tuple())


def test_detect_three_array_none_on_pairs():
    sample = _sample(
        [("0", "0", 1.0), ("0", "1", 2.0), ("2", "5", 3.0), ("3", "5", 4.0), ("7", "7", 0)]
    )
    assert detect_three_array(sample) is None
    assert scan_three_array_bruteforce(sample) is None


def test_collinear_triple_is_not_an_array():
    sample = _sample([("0", "0", 0.0), ("0", "1", 0.0), ("0", "2", 0.0)])
    assert detect_three_array(sample) is None
    assert scan_three_array_bruteforce(sample) is None


def test_exact_coordinates_do_not_collide_through_floats():
    # 0.1 + 0.2 != 0.3 in floats but the parsed rationals are equal
    sample = _sample(
        [("0.3", "0", 0.0), (Fraction(1, 10) + Fraction(2, 10), "1", 0.0), ("5", "0", 0.0)]
    )
    assert detect_three_array(sample) == ArrayWitness(a1=1, a2=0, a3=2)


@given(grid_points)
@settings(max_examples=60, deadline=None)
def test_detector_agrees_with_bruteforce(cells):
    sample = _sample([(x, y, 0.0) for x, y in cells])
    witness = detect_three_array(sample)
    assert witness == scan_three_array_bruteforce(sample)
    if witness is not None:
        assert is_array(sample, *witness.as_tuple())


@given(grid_points, st.integers(0, 13), st.integers(1, 5), st.integers(1, 5))
@settings(max_examples=40, deadline=None)
def test_planted_array_is_found(cells, corner, dx, dy):
    x, y = cells[corner % len(cells)]
    planted = set(cells) | {(x + dx + 10, y), (x, y + dy + 10)}
    sample = _sample([(a, b, 0.0) for a, b in sorted(planted)])
    assert detect_three_array(sample) is not None


def _coarse_grid_sample(rng, size):
    side = 2 * size
    cells = rng.choice(side * side, size=size, replace=False)
    return _sample(
        [(Fraction(int(k) // side, side), Fraction(int(k) % side, side), 0.0) for k in cells]
    )


def _planted_corner_sample(rng, size, seed):
    base = generate("random_noarray", size - 2, seed=seed)
    corner = base.points[int(rng.integers(len(base)))]
    rows = [(p.x, p.y, p.fval) for p in base.points]
    rows += [(corner.x + 2, corner.y, 0.0), (corner.x, corner.y + 2, 0.0)]
    return _sample(rows)


@pytest.mark.parametrize("seed", range(1, 101))
def test_detector_agrees_with_bruteforce_up_to_300_points(seed):
    rng = np.random.default_rng(seed)
    size = int(rng.integers(100, 301))
    kind = seed % 3
    if kind == 0:
        sample = _coarse_grid_sample(rng, size)
    elif kind == 1:
        sample = generate("random_noarray", size, seed=seed)
    else:
        sample = _planted_corner_sample(rng, size, seed)

    witness = detect_three_array(sample)
    assert witness == scan_three_array_bruteforce(sample)
    if kind == 1:
        assert witness is None
    if kind == 2:
        assert witness is not None
    if witness is not None:
        assert is_array(sample, *witness.as_tuple())


def test_sup_norm():
    sample = _sample([("0", "0", -3.5), ("1", "1", 2.0)])
    assert sup_norm(sample) == 3.5


def test_modulus_delta_examples():
    sample = _sample([("0", "0", 0.0), ("0.25", "0", 1.0)])
    # rough pair at distance 1/4: need 2 delta <= 1/4
    assert modulus_delta(sample, 0.5) == Fraction(1, 8)
    # nothing is rough at eps = 2, so delta is 2^-min_exponent
    assert modulus_delta(sample, 2.0) == Fraction(1)
    assert modulus_delta(sample, 2.0, min_exponent=3) == Fraction(1, 8)


def test_modulus_delta_raises_when_floor_is_reached():
    sample = _sample([("0", "0", 0.0), ("0.25", "0", 1.0)])
    with pytest.raises(NoModulusError):
        modulus_delta(sample, 0.5, max_exponent=2)
    with pytest.raises(ValueError):
        modulus_delta(sample, 0.0)


@given(
    st.lists(
        st.tuples(st.integers(0, 64), st.integers(0, 64), st.integers(-4, 4)),
        min_size=2,
        max_size=12,
        unique_by=lambda t: (t[0], t[1]),
    ),
    st.sampled_from([0.5, 1.0, 2.5]),
)
@settings(max_examples=50, deadline=None)
def test_modulus_matches_pair_scan(rows, eps):
    sample = _sample([(Fraction(x, 64), Fraction(y, 64), float(f)) for x, y, f in rows])
    rough = [
        max(abs(a.x - b.x), abs(a.y - b.y))
        for a, b in combinations(sample.points, 2)
        if abs(a.fval - b.fval) >= eps
    ]
    assert closest_rough_pair(sample, eps) == (min(rough) if rough else None)
    delta = modulus_delta(sample, eps)
    for a, b in combinations(sample.points, 2):
        if max(abs(a.x - b.x), abs(a.y - b.y)) < 2 * delta:
            assert abs(a.fval - b.fval) < eps


@given(st.fractions(min_value=-8, max_value=8, max_denominator=1000), st.integers(0, 12))
@settings(max_examples=80)
def test_cell_index_contains_coordinate(coord, level):
    i = cell_index(coord, level)
    assert Fraction(i, 2**level) <= coord < Fraction(i + 1, 2**level)


def test_csv_parsing_and_writing():
    text = "x,y,f\n# comment\n\n0.5, -1.25, 3\n1/3,0,-0.5\n"
    sample = PlaneSample.from_csv_text(text)
    assert sample.xs == [Fraction(1, 2), Fraction(1, 3)]
    assert sample.ys == [Fraction(-5, 4), Fraction(0)]
    assert list(sample.fvals) == [3.0, -0.5]
    assert sample.to_csv_text() == "# x,y,f\n0.5,-1.25,3.0\n1/3,0,-0.5\n"
    assert PlaneSample.from_csv_text(sample.to_csv_text()) == sample


@pytest.mark.parametrize(
    "text",
    [
        "",
        "0,0\n",
        "0,0,nan\n",
        "0,0,1\n0,0,2\n",
        "a,0,1\n",
    ],
)
def test_csv_rejects_bad_input(text):
    with pytest.raises(SampleFormatError):
        PlaneSample.from_csv_text(text)


def test_with_values_and_bounding_box():
    sample = _sample([("1", "2", 1.0), ("-1", "3", 2.0)])
    assert sample.bounding_box == (Fraction(-1), Fraction(1), Fraction(2), Fraction(3))
    shifted = sample.with_values([0.0, 0.5])
    assert shifted.xs == sample.xs and list(shifted.fvals) == [0.0, 0.5]
    assert sample.find(Fraction(-1), Fraction(3)) == 1
    assert sample.find(Fraction(0), Fraction(0)) is None
