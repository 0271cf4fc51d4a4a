"""Random and structured point sets as baselines for the exact optima.

Samples live on [0, 1). Distance-to-nearest-point statistics and
per-sample distortion use the circle metric (wrap-around), which is what
the exact small-sample laws here describe: for n iid uniform points the
scaled nearest distance n * min_a d(x, a) has survival (1 - 2t/n)^n with
limit e^(-2t), and its mean is n / (2 (n + 1)). Star and extreme
discrepancy use the standard sorted-sample formulas on the interval.

``compare_table`` lines all of it up against the exact engines: the IID
and Kronecker columns measure the distortion of those point sets as
quantizers of the target distribution (line metric, float integration), so
the optimal column is a true lower bound for them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .allocation import optimal_allocations
from .canonical import sequence_error, sequence_of_order
from .defaults import DEFAULT_SEED
from .distributions import INFINITE_GEOMETRIC, PiecewiseUniform
from .errors import ConsistencyError
from .oracle import FloatPieces, piecewise_distortion

GOLDEN_THETA = (math.sqrt(5.0) - 1.0) / 2.0

_CHUNK = 1_000_000  # max matrix elements per batch in the trial loops


def resolve_theta(theta) -> float:
    """Accept a float in (0, 1) or the name "golden"."""
    if isinstance(theta, str):
        if theta == "golden":
            return GOLDEN_THETA
        raise ValueError(f"unknown theta name: {theta!r}")
    th = float(theta)
    if not 0.0 < th < 1.0:
        raise ValueError("theta must lie strictly between 0 and 1")
    return th


@dataclass(frozen=True, eq=False)
class PointSample:
    """Points in [0, 1) plus a record of how they were generated."""

    points: np.ndarray
    generator: str

    @property
    def n(self) -> int:
        return int(self.points.size)


def iid_sample(n: int, seed: int = DEFAULT_SEED) -> PointSample:
    """n iid uniform points (PCG64 generator, fully determined by the seed)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    return PointSample(rng.random(n), f"pcg64:seed={seed}")


def kronecker_sample(n: int, theta="golden") -> PointSample:
    """Fractional parts of theta, 2 theta, ..., n theta."""
    if n < 1:
        raise ValueError("n must be >= 1")
    th = resolve_theta(theta)
    pts = (np.arange(1, n + 1) * th) % 1.0
    return PointSample(pts, f"kronecker:theta={th:.17g}")


def _as_points(sample) -> np.ndarray:
    pts = sample.points if isinstance(sample, PointSample) else np.asarray(sample, dtype=float)
    if pts.size == 0:
        raise ValueError("need at least one point")
    return pts


# ----------------------------------------------------------------------
# discrepancy

@dataclass(frozen=True)
class DiscrepancyResult:
    d_star: float
    d_extreme: float


def discrepancy(sample) -> DiscrepancyResult:
    """Star and extreme discrepancy of points in [0, 1).

    Sorted-sample closed forms. The bracketing facts 1/(2n) <= D*,
    D* <= D <= 2 D* and D <= 1 are enforced as hard invariants, not left
    to the caller.
    """
    x = np.sort(_as_points(sample))
    if x[0] < 0.0 or x[-1] >= 1.0:
        raise ValueError("points must lie in [0, 1)")
    n = x.size
    up = np.arange(1, n + 1) / n - x
    d_star = float(max(np.max(up), np.max(x - np.arange(n) / n)))
    d_ext = float(1.0 / n + np.max(up) - np.min(up))
    eps = 1e-12
    ok = (1.0 / (2 * n) <= d_star + eps) and (d_star <= d_ext + eps) \
        and (d_ext <= 2.0 * d_star + eps) and (d_ext <= 1.0 + eps)
    if not ok:
        raise ConsistencyError(f"discrepancy bounds violated: D*={d_star}, D={d_ext}")
    return DiscrepancyResult(d_star, d_ext)


# ----------------------------------------------------------------------
# circle-metric statistics

def circular_gaps(sample) -> np.ndarray:
    """Sorted-neighbor gaps on the circle, wrap gap included; sums to 1."""
    x = np.sort(_as_points(sample))
    # 1 - (span) instead of x[0] + 1 - x[-1]: exact when there is one point
    return np.concatenate([np.diff(x), [1.0 - (x[-1] - x[0])]])


def min_distance(x: float, sample) -> float:
    """Circle distance from x to the nearest sample point."""
    d = np.abs(_as_points(sample) - x) % 1.0
    return float(np.min(np.minimum(d, 1.0 - d)))


def expected_min_distance(sample) -> float:
    """Exact average over uniform x of the circle distance to the sample.

    Each gap g contributes g^2 / 4 (two half-gaps of linear distance).
    """
    g = circular_gaps(sample)
    return float(np.sum(g * g) / 4.0)


def distortion_of_sample(sample) -> float:
    """Exact circle-metric distortion of the sample: sum of g^3 / 12.

    Equal spacing gives 1/(12 n^2), the optimum for the uniform law on the
    circle; every sample is bounded below by it.
    """
    g = circular_gaps(sample)
    return float(np.sum(g**3) / 12.0)


def mean_min_distance_stats(n: int, trials: int, seed: int = DEFAULT_SEED) -> tuple[float, float]:
    """Monte Carlo mean and standard error of n * E_x[min distance].

    Per trial the statistic is n * sum(g^2) / 4, exact given the sample, so
    the only noise is over samples. The law says the mean is n/(2(n+1)).
    """
    if n < 1 or trials < 1:
        raise ValueError("need n >= 1 and trials >= 1")
    rng = np.random.default_rng(seed)
    vals = np.empty(trials)
    done = 0
    step = max(1, _CHUNK // n)
    while done < trials:
        take = min(step, trials - done)
        pts = np.sort(rng.random((take, n)), axis=1)
        gaps = np.diff(pts, axis=1)
        wrap = 1.0 - (pts[:, -1] - pts[:, 0])
        ssq = np.sum(gaps * gaps, axis=1) + wrap**2
        vals[done : done + take] = n * ssq / 4.0
        done += take
    mean = float(np.mean(vals))
    se = 0.0 if trials == 1 else float(np.std(vals, ddof=1) / math.sqrt(trials))
    return mean, se


def survival_law(n: int, t: float) -> float:
    """P(n * min distance >= t) for n iid uniform points, exact for finite n."""
    base = 1.0 - 2.0 * t / n
    return base**n if base > 0.0 else 0.0


def survival_limit(t: float) -> float:
    """Large-n limit of the survival law."""
    return math.exp(-2.0 * t)


def survival_curve(n: int, t_values, trials: int, seed: int = DEFAULT_SEED) -> list[float]:
    """Empirical survival of n * (circle distance from 0 to the sample).

    By rotation invariance the reference point 0 loses no generality.
    """
    if n < 1 or trials < 1:
        raise ValueError("need n >= 1 and trials >= 1")
    ts = [float(t) for t in t_values]
    rng = np.random.default_rng(seed)
    scaled = np.empty(trials)
    done = 0
    step = max(1, _CHUNK // n)
    while done < trials:
        take = min(step, trials - done)
        pts = rng.random((take, n))
        d = np.min(np.minimum(pts, 1.0 - pts), axis=1)
        scaled[done : done + take] = n * d
        done += take
    return [float(np.mean(scaled >= t)) for t in ts]


# ----------------------------------------------------------------------
# head-to-head table

def optimal_error(dist: PiecewiseUniform, n: int) -> Fraction:
    """Exact optimal n-point error for either bundled family.

    n = 1 is the variance; the infinite family uses the sequence chain,
    finite ones the allocator (which needs n >= piece count).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return dist.variance()
    if dist.kind == INFINITE_GEOMETRIC:
        return sequence_error(sequence_of_order(n))
    return optimal_allocations(dist, n)[0].error


def compare_table(
    dist: PiecewiseUniform,
    n_values,
    *,
    theta="golden",
    trials: int = 100,
    seed: int = DEFAULT_SEED,
    truncate: int = 30,
) -> list[dict]:
    """Optimal vs iid vs Kronecker quantization of ``dist``, one row per n.

    Row keys match the CSV columns: n, V_opt, V_iid_mean, V_iid_se, V_kron,
    Dstar_iid_mean, Dstar_kron. The iid columns average ``trials`` fresh
    samples; the Kronecker points for each n are the first n terms of the
    one theta orbit.
    """
    n_values = [int(n) for n in n_values]
    if not n_values or min(n_values) < 1:
        raise ValueError("need n values >= 1")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    fp = FloatPieces.from_distribution(dist, truncate)
    th = resolve_theta(theta)
    orbit = (np.arange(1, max(n_values) + 1) * th) % 1.0
    rng = np.random.default_rng(seed)
    rows = []
    for n in n_values:
        v_opt = float(optimal_error(dist, n))
        v_iid = np.empty(trials)
        d_iid = np.empty(trials)
        for t in range(trials):
            pts = np.sort(rng.random(n))
            v_iid[t] = piecewise_distortion(fp, pts)
            d_iid[t] = discrepancy(pts).d_star
        kron = np.sort(orbit[:n])
        rows.append(
            {
                "n": n,
                "V_opt": v_opt,
                "V_iid_mean": float(np.mean(v_iid)),
                "V_iid_se": 0.0 if trials == 1 else float(np.std(v_iid, ddof=1) / math.sqrt(trials)),
                "V_kron": piecewise_distortion(fp, kron),
                "Dstar_iid_mean": float(np.mean(d_iid)),
                "Dstar_kron": discrepancy(kron).d_star,
            }
        )
    return rows
