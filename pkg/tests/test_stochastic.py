"""Random baselines: sampling, discrepancy, circle statistics, comparisons."""

import math

import numpy as np
import pytest

from pwquant import (
    DEFAULT_SEED,
    GOLDEN_THETA,
    ConsistencyError,
    PiecewiseUniform,
    circular_gaps,
    compare_table,
    discrepancy,
    distortion_of_sample,
    expected_min_distance,
    iid_sample,
    kronecker_sample,
    mean_min_distance_stats,
    min_distance,
    optimal_error,
    resolve_theta,
    survival_curve,
    survival_law,
    survival_limit,
)
from fractions import Fraction as F


def test_resolve_theta():
    assert resolve_theta("golden") == GOLDEN_THETA
    assert resolve_theta(0.3) == 0.3
    assert GOLDEN_THETA == pytest.approx((math.sqrt(5) - 1) / 2)
    for bad in ("silver", 0.0, 1.0, -0.2, 1.5):
        with pytest.raises(ValueError):
            resolve_theta(bad)


def test_iid_sample():
    s = iid_sample(100, seed=7)
    assert s.n == 100
    assert s.generator == "pcg64:seed=7"
    assert np.all((s.points >= 0.0) & (s.points < 1.0))
    assert np.array_equal(s.points, iid_sample(100, seed=7).points)
    assert not np.array_equal(s.points, iid_sample(100, seed=8).points)
    with pytest.raises(ValueError):
        iid_sample(0)


def test_kronecker_sample():
    s = kronecker_sample(3)
    assert s.generator.startswith("kronecker:theta=0.61803398874989")
    assert s.points == pytest.approx([0.6180339887, 0.2360679775, 0.8541019662])
    # the orbit is a fixed sequence: any prefix agrees with a longer run
    long = kronecker_sample(50)
    assert np.array_equal(long.points[:3], s.points)
    half = kronecker_sample(4, theta=0.5)
    assert half.points == pytest.approx([0.5, 0.0, 0.5, 0.0])
    with pytest.raises(ValueError):
        kronecker_sample(0)


def test_discrepancy_lattices():
    n = 8
    centered = (2 * np.arange(1, n + 1) - 1) / (2 * n)
    r = discrepancy(centered)
    assert r.d_star == pytest.approx(1 / (2 * n), abs=1e-15)
    assert r.d_extreme == pytest.approx(1 / n, abs=1e-15)
    left = np.arange(n) / n
    r = discrepancy(left)
    assert r.d_star == pytest.approx(1 / n, abs=1e-15)
    assert r.d_extreme == pytest.approx(1 / n, abs=1e-15)
    single = discrepancy([0.0])
    assert single.d_star == 1.0 and single.d_extreme == 1.0


def test_discrepancy_input_handling():
    shuffled = discrepancy([0.7, 0.1, 0.4])
    assert shuffled == discrepancy([0.1, 0.4, 0.7])
    assert discrepancy(iid_sample(20)).d_star > 0
    for bad in ([], [-0.1, 0.5], [0.2, 1.0]):
        with pytest.raises(ValueError):
            discrepancy(bad)


def test_discrepancy_invariants_random():
    rng = np.random.default_rng(11)
    for n in (1, 2, 3, 10, 100, 1000):
        for _ in range(5):
            r = discrepancy(rng.random(n))
            assert 1 / (2 * n) <= r.d_star + 1e-12
            assert r.d_star <= r.d_extreme <= 2 * r.d_star + 1e-12
            assert r.d_extreme <= 1.0 + 1e-12


def test_circular_gaps():
    g = circular_gaps([0.2, 0.5, 0.9])
    assert g == pytest.approx([0.3, 0.4, 0.3])
    assert circular_gaps([0.37]).tolist() == [1.0]  # exact, not just close
    rng = np.random.default_rng(3)
    for n in (1, 2, 17, 400):
        g = circular_gaps(rng.random(n))
        assert g.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.all(g >= 0)


def test_min_distance_wraps():
    assert min_distance(0.95, [0.0, 0.5]) == pytest.approx(0.05)
    assert min_distance(0.25, [0.0, 0.5]) == pytest.approx(0.25)
    assert min_distance(0.5, [0.5]) == 0.0


def test_equally_spaced_statistics():
    # n equal gaps of 1/n: mean distance 1/(4n), distortion 1/(12 n^2)
    for n in (1, 2, 5, 32):
        pts = (np.arange(n) + 0.25) / n
        assert expected_min_distance(pts) == pytest.approx(1 / (4 * n), rel=1e-12)
        assert distortion_of_sample(pts) == pytest.approx(1 / (12 * n * n), rel=1e-12)
    # equal spacing is optimal on the circle; anything else does worse
    rng = np.random.default_rng(5)
    for n in (2, 7, 30):
        sample = rng.random(n)
        assert distortion_of_sample(sample) >= 1 / (12 * n * n) - 1e-15


def test_mean_min_distance_one_point_is_exact():
    # a single point always has the full circle as its gap
    mean, se = mean_min_distance_stats(1, trials=500)
    assert mean == 0.25 and se == 0.0


def test_mean_min_distance_matches_law():
    for n in (2, 5, 10):
        mean, se = mean_min_distance_stats(n, trials=20_000, seed=DEFAULT_SEED)
        law = n / (2 * (n + 1))
        assert se > 0
        assert abs(mean - law) <= 4 * se
    again = mean_min_distance_stats(5, trials=20_000, seed=DEFAULT_SEED)
    assert again == mean_min_distance_stats(5, trials=20_000, seed=DEFAULT_SEED)
    _, se1 = mean_min_distance_stats(5, trials=1)
    assert se1 == 0.0
    with pytest.raises(ValueError):
        mean_min_distance_stats(0, trials=10)
    with pytest.raises(ValueError):
        mean_min_distance_stats(3, trials=0)


def test_survival_law_shapes():
    assert survival_law(10, 0.0) == 1.0
    assert survival_law(1, 0.6) == 0.0  # t beyond the largest possible distance
    assert survival_law(10, 1.0) == pytest.approx(0.8**10)
    assert survival_limit(0.0) == 1.0
    assert survival_limit(1.0) == pytest.approx(math.exp(-2))
    assert survival_law(10**6, 1.0) == pytest.approx(survival_limit(1.0), rel=1e-5)
    ts = np.linspace(0, 2, 9)
    vals = [survival_law(7, t) for t in ts]
    assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_survival_curve_matches_law():
    n, trials = 40, 20_000
    ts = [0.25, 0.5, 1.0]
    emp = survival_curve(n, ts, trials=trials, seed=DEFAULT_SEED)
    assert len(emp) == len(ts)
    for e, t in zip(emp, ts):
        p = survival_law(n, t)
        sigma = math.sqrt(p * (1 - p) / trials)
        assert abs(e - p) <= 4 * sigma
    assert emp == survival_curve(n, ts, trials=trials, seed=DEFAULT_SEED)
    with pytest.raises(ValueError):
        survival_curve(0, ts, trials=10)


def test_optimal_error(inf, three):
    assert optimal_error(inf, 1) == F(25, 204)
    assert optimal_error(inf, 4) == F(79, 44064)
    assert optimal_error(three, 1) == F(119, 972)
    assert optimal_error(three, 7) == F(19, 31104)
    assert isinstance(optimal_error(inf, 2), F)
    with pytest.raises(ValueError):
        optimal_error(inf, 0)


def test_compare_table_infinite(inf):
    rows = compare_table(inf, [2, 4, 8], trials=40, seed=123)
    keys = ["n", "V_opt", "V_iid_mean", "V_iid_se", "V_kron", "Dstar_iid_mean", "Dstar_kron"]
    assert [r["n"] for r in rows] == [2, 4, 8]
    for r in rows:
        assert list(r) == keys
        # the exact optimum lower-bounds any other point set
        assert r["V_iid_mean"] >= r["V_opt"] > 0
        assert r["V_kron"] >= r["V_opt"]
        assert r["V_iid_se"] > 0
        assert r["Dstar_iid_mean"] >= 1 / (2 * r["n"])
        assert r["Dstar_kron"] >= 1 / (2 * r["n"])
    assert rows[0]["V_opt"] == pytest.approx(float(F(7, 612)))
    assert rows == compare_table(inf, [2, 4, 8], trials=40, seed=123)


def test_compare_table_finite(three):
    rows = compare_table(three, [1, 3, 9], trials=10, seed=9)
    assert rows[0]["V_opt"] == pytest.approx(float(F(119, 972)))
    assert rows[1]["V_opt"] == pytest.approx(float(F(5, 972)))
    for r in rows:
        assert r["V_iid_mean"] >= r["V_opt"]
        assert r["V_kron"] >= r["V_opt"]


def test_compare_table_kronecker_discrepancy_improves(inf):
    rows = compare_table(inf, [10, 100], trials=1, seed=1)
    assert rows[1]["Dstar_kron"] < rows[0]["Dstar_kron"]
    assert rows[0]["V_iid_se"] == 0.0  # single trial has no spread


def test_compare_table_rejects_bad_args(inf):
    with pytest.raises(ValueError):
        compare_table(inf, [])
    with pytest.raises(ValueError):
        compare_table(inf, [0, 2])
    with pytest.raises(ValueError):
        compare_table(inf, [2], trials=0)
    with pytest.raises(ValueError):
        compare_table(inf, [2], theta="silver")
