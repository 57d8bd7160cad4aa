import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatpoints import interpolation
from fatpoints.points import (
    CannotSample, Hyperplane, ImproperConfiguration, InvalidPoint, PointConfig, ProjectivePoint,
    count_projective_points, generic_subset, normalize_point, quadric_witness, sample_config,
    star_configuration, validate_config,
)
from fatpoints.polys import evaluate

from oracles import naive_rank, projective_points_by_enumeration


@pytest.mark.parametrize("raw, expected", [
    ([Fraction(2, 3), Fraction(-4, 3), 0], (1, -2, 0)),
    ([0, 0, 5], (0, 0, 1)),
    ([-1, 2, -3], (1, -2, 3)),
])
def test_normalize_point(raw, expected):
    assert normalize_point(raw).coords == expected


def test_normalize_zero_point():
    with pytest.raises(InvalidPoint):
        normalize_point([0, 0, 0])


coords = st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=30), min_size=2, max_size=5)


@settings(max_examples=150)
@given(coords.filter(any), st.fractions(min_value=-20, max_value=20, max_denominator=15).filter(bool))
def test_normalize_idempotent_and_scale_invariant(raw, s):
    p = normalize_point(raw)
    assert normalize_point(p.coords) == p
    assert normalize_point([s * c for c in raw]) == p


def test_validate_ok(coord3):
    assert validate_config(coord3).ok


def test_validate_duplicate():
    cfg = PointConfig(2, (ProjectivePoint((1, 0, 0)), ProjectivePoint((1, 0, 0))))
    rep = validate_config(cfg)
    assert rep.violations == [{"kind": "duplicate", "indices": [0, 1]}]


def test_validate_zero_point():
    cfg = PointConfig(2, (ProjectivePoint((1, 0, 0)), ProjectivePoint((0, 0, 0))))
    assert [v["kind"] for v in validate_config(cfg).violations] == ["zero-point"]


def test_validate_dimension_mismatch():
    cfg = PointConfig(2, (ProjectivePoint((1, 0, 0)), ProjectivePoint((1, 0))))
    assert [v["kind"] for v in validate_config(cfg).violations] == ["dimension"]


def test_sample_single_point():
    cfg = sample_config(1, 2, 7, 10)
    assert cfg.n == 1 and validate_config(cfg).ok


def test_sample_golden():
    cfg = sample_config(3, 2, 42, 10)
    assert [p.coords for p in cfg.points] == [(9, -10, -6), (3, -1, -6), (2, 3, -1)]
    assert validate_config(cfg).ok


def test_sample_reproducible():
    a = sample_config(7, 3, 123, 5)
    b = sample_config(7, 3, 123, 5)
    assert a == b
    assert a != sample_config(7, 3, 124, 5)


def test_cannot_sample_pigeonhole():
    assert len(projective_points_by_enumeration(1, 1)) == 4
    assert count_projective_points(1, 1) == 4
    with pytest.raises(CannotSample):
        sample_config(10, 1, 0, 1)
    # 5 vectors fit the raw box count (8) but only 4 projective points exist
    with pytest.raises(CannotSample):
        sample_config(5, 1, 0, 1)
    assert sample_config(4, 1, 0, 1).n == 4


@pytest.mark.parametrize("N, h", [(1, 1), (1, 2), (1, 5), (2, 1), (2, 3), (3, 2)])
def test_projective_point_count_matches_enumeration(N, h):
    assert count_projective_points(N, h) == len(projective_points_by_enumeration(N, h))


@pytest.mark.parametrize("seed", range(20))
def test_samples_validate(seed):
    rng = random.Random(seed)
    cfg = sample_config(rng.randint(1, 12), rng.randint(1, 4), seed, rng.randint(2, 10))
    assert validate_config(cfg).ok


def test_star_coordinate_hyperplanes():
    cfg = star_configuration([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert {p.coords for p in cfg.points} == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_star_four_lines(star6):
    assert {p.coords for p in star6.points} == {
        (0, 0, 1), (0, 1, 0), (1, 0, 0), (0, 1, -1), (1, 0, -1), (1, -1, 0)}


def test_star_improper_common_point():
    with pytest.raises(ImproperConfiguration):
        star_configuration([[1, 0, 0], [0, 1, 0], [1, 1, 0]])


def test_star_improper_degenerate_subset():
    with pytest.raises(ImproperConfiguration):
        star_configuration([[1, 0, 0], [2, 0, 0], [0, 0, 1]])


@pytest.mark.parametrize("N, h", [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 3), (3, 4), (3, 5)])
def test_star_counts_random_hyperplanes(N, h):
    rng = random.Random(100 * N + h)
    hs = [Hyperplane.of([rng.randint(-9, 9) or 1 for _ in range(N + 1)]) for _ in range(h)]
    cfg = star_configuration(hs)
    assert cfg.n == comb(h, N)
    assert validate_config(cfg).ok
    for p in cfg.points:
        assert sum(hp.contains(p) for hp in hs) == N


def test_quadric_five_points(five_points):
    w = quadric_witness(five_points)
    assert w is not None
    assert all(evaluate(w, 2, p.coords) == 0 for p in five_points.points)


def test_quadric_coordinate_points(coord3):
    w = quadric_witness(coord3)
    assert w is not None and all(evaluate(w, 2, p.coords) == 0 for p in coord3.points)


def test_quadric_six_points_none():
    cfg = sample_config(6, 2, 11)
    from fatpoints.points import evaluation_rows
    assert naive_rank(evaluation_rows(cfg, 2)) == 6
    assert quadric_witness(cfg) is None


@pytest.mark.parametrize("seed", range(12))
def test_quadric_exists_below_threshold(seed):
    rng = random.Random(seed)
    N = rng.randint(1, 3)
    n = rng.randint(1, comb(N + 2, 2) - 1)
    cfg = sample_config(n, N, seed)
    w = quadric_witness(cfg)
    assert w is not None and all(evaluate(w, 2, p.coords) == 0 for p in cfg.points)


def test_generic_subset_avoids_collinear():
    cfg = PointConfig.of([[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]])
    sub = generic_subset(cfg, 3)
    assert naive_rank([p.coords for p in sub.points]) == 3
    assert interpolation.hilbert_function(sub, 1) == 3


def test_generic_subset_full_and_single(five_points):
    assert generic_subset(five_points, five_points.n) == five_points
    assert generic_subset(five_points, 1).points == five_points.points[:1]


def test_generic_subset_too_many(coord3):
    with pytest.raises(ValueError):
        generic_subset(coord3, 4)


def _mixed_config(seed):
    line = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, -1, 0]]
    return PointConfig.of(line + [p.coords for p in sample_config(4, 2, seed).points])


@pytest.mark.parametrize("seed", range(4))
def test_generic_subset_keeps_low_hilbert_function(seed):
    # dim R_{alpha-1} points suffice to keep H_X in degrees <= alpha - 1
    X = _mixed_config(seed)
    alpha = interpolation.alpha_symbolic(X, 1).alpha
    t = comb(alpha - 1 + X.N, X.N)
    Y = generic_subset(X, t)
    for d in range(alpha):
        assert interpolation.hilbert_function(Y, d) == interpolation.hilbert_function(X, d) == comb(d + 2, 2)
    assert interpolation.is_generic_position(Y)


@pytest.mark.parametrize("seed", range(4))
def test_generic_subset_binomial_count(seed):
    # binom(alpha - 2 + N, N) points match H_X through degree alpha - 2
    X = _mixed_config(seed)
    alpha = interpolation.alpha_symbolic(X, 1).alpha
    t = comb(alpha - 1 + X.N - 1, X.N)
    Y = generic_subset(X, t)
    for d in range(alpha - 1):
        assert interpolation.hilbert_function(Y, d) == interpolation.hilbert_function(X, d)
    assert interpolation.is_generic_position(Y)
