"""Independent cross-checks for the exact engines.

Two kinds of oracle live here, deliberately sharing no search logic with
the incremental engines they verify:

- ``brute_force_infinite`` and ``brute_force_finite`` enumerate every block
  composition and score it in scaled integer arithmetic, so the comparison
  against the chain engine and the greedy allocator is exact.
- ``lloyd`` / ``lloyd_multistart`` run the classical fixed-point iteration
  (Voronoi boundaries at midpoints, points to cell conditional means) in
  floating point on a piece table, with multi-start over initial points
  drawn from the distribution itself. ``lloyd_crosscheck`` re-evaluates the
  returned float points exactly under the true distribution, which is the
  number to compare with the exact optimum: the infinite family must be
  truncated for the float iteration, and the truncation bias, while tiny,
  is not below the tolerance the cross-check cares about. Point error is
  second order in the distortion, so the exact re-evaluation is clean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .canonical import CanonicalSequence
from .defaults import DEFAULT_SEED
from .distributions import FINITE, PiecewiseUniform
from .errors import ConsistencyError, ZeroMassCellError


@dataclass(frozen=True, eq=False)
class FloatPieces:
    """Float rendering of a distribution's pieces for the numeric path."""

    lefts: np.ndarray
    rights: np.ndarray
    densities: np.ndarray
    cum: np.ndarray  # cumulative mass, leading 0, forced to end at 1

    @classmethod
    def from_distribution(cls, dist: PiecewiseUniform, truncate: int = 30) -> "FloatPieces":
        """Render pieces as floats; the infinite family keeps ``truncate``
        pieces and renormalizes the lost tail mass 2^(-truncate) away.
        Beyond roughly 32 pieces the endpoints collapse in double
        precision, so larger values buy nothing.
        """
        if dist.kind == FINITE:
            count = dist.piece_count
            scale = 1.0
        else:
            if truncate < 1:
                raise ValueError("need at least one piece")
            count = truncate
            scale = 1.0 / float(1 - Fraction(1, 2**truncate))
        ps = [dist.piece(j) for j in range(1, count + 1)]
        lefts = np.array([float(p.left) for p in ps])
        rights = np.array([float(p.right) for p in ps])
        dens = np.array([float(p.density) for p in ps]) * scale
        cum = np.concatenate([[0.0], np.cumsum(dens * (rights - lefts))])
        cum /= cum[-1]
        return cls(lefts, rights, dens, cum)


def _as_float_pieces(dist, truncate: int) -> FloatPieces:
    if isinstance(dist, FloatPieces):
        return dist
    return FloatPieces.from_distribution(dist, truncate)


def _segments(fp: FloatPieces, boundaries: np.ndarray):
    # refine the pieces by the Voronoi boundaries: returns subinterval
    # lefts, rights, densities and owning cell index
    edges = np.unique(np.concatenate([fp.lefts, fp.rights, boundaries]))
    l, r = edges[:-1], edges[1:]
    mid = (l + r) / 2
    pi = np.searchsorted(fp.lefts, mid, side="right") - 1
    pic = np.clip(pi, 0, len(fp.lefts) - 1)
    inside = (pi >= 0) & (mid < fp.rights[pic]) & (r > l)
    cell = np.searchsorted(boundaries, mid[inside])
    return l[inside], r[inside], fp.densities[pic[inside]], cell


def piecewise_distortion(dist, points, *, truncate: int = 30) -> float:
    """Mean squared distance to the nearest of ``points`` in float arithmetic."""
    fp = _as_float_pieces(dist, truncate)
    pts = np.sort(np.asarray(points, dtype=float))
    if pts.size == 0:
        raise ValueError("need at least one point")
    bounds = (pts[1:] + pts[:-1]) / 2
    l, r, dens, cell = _segments(fp, bounds)
    a = pts[cell]
    return float(np.sum(dens * ((r - a) ** 3 - (l - a) ** 3)) / 3.0)


def inverse_cdf(fp: FloatPieces, u: np.ndarray) -> np.ndarray:
    """Map uniforms in [0, 1) through the piecewise inverse CDF."""
    u = np.asarray(u, dtype=float)
    idx = np.clip(np.searchsorted(fp.cum, u, side="right") - 1, 0, len(fp.lefts) - 1)
    frac = (u - fp.cum[idx]) / (fp.cum[idx + 1] - fp.cum[idx])
    return fp.lefts[idx] + frac * (fp.rights[idx] - fp.lefts[idx])


@dataclass(frozen=True)
class LloydState:
    """Result of a Lloyd run: final points and the convergence record."""

    points: tuple[float, ...]
    distortion: float
    iterations: int
    converged: bool
    history: tuple[float, ...]


def lloyd(dist, initial_points, *, max_iter: int = 1000, tol: float = 1e-12, truncate: int = 30) -> LloydState:
    """Fixed-point iteration from an explicit start.

    Alternates midpoint boundaries with cell conditional means until the
    largest point movement drops below ``tol``. A cell that ends up with no
    mass, or cell means that stop being strictly increasing, abort the run
    with ZeroMassCellError (multi-start treats that as a bad draw). The
    recorded distortion history must never increase; that would be a bug
    and raises ConsistencyError.
    """
    fp = _as_float_pieces(dist, truncate)
    pts = np.array(sorted(float(p) for p in initial_points))
    if pts.size == 0:
        raise ValueError("need at least one point")
    if np.any(np.diff(pts) <= 0):
        raise ValueError("initial points must be distinct")
    history: list[float] = []
    prev = math.inf
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        bounds = (pts[1:] + pts[:-1]) / 2
        l, r, dens, cell = _segments(fp, bounds)
        mass = np.bincount(cell, weights=dens * (r - l), minlength=pts.size)
        if np.any(mass <= 0.0):
            raise ZeroMassCellError(f"empty cell at iteration {iterations}")
        mom = np.bincount(cell, weights=dens * (r * r - l * l) / 2, minlength=pts.size)
        new = mom / mass
        if np.any(np.diff(new) <= 0):
            raise ZeroMassCellError("cells collapsed, means no longer increasing")
        d = piecewise_distortion(fp, new)
        if d > prev * (1 + 1e-12):
            raise ConsistencyError(f"distortion rose from {prev} to {d}")
        history.append(d)
        prev = d
        move = float(np.max(np.abs(new - pts)))
        pts = new
        if move < tol:
            converged = True
            break
    return LloydState(tuple(pts.tolist()), prev, iterations, converged, tuple(history))


def lloyd_multistart(
    dist,
    n: int,
    *,
    restarts: int = 50,
    seed: int = DEFAULT_SEED,
    truncate: int = 30,
    max_iter: int = 1000,
    tol: float = 1e-12,
) -> LloydState:
    """Best of ``restarts`` Lloyd runs from iid starts drawn from ``dist``.

    Deterministic given the seed; the winner is the minimum under the total
    order (distortion, points), so the result does not depend on visit
    order. Degenerate draws (duplicate points, emptied cells) are redrawn
    and do not consume a restart, with a hard cap on total attempts.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    fp = _as_float_pieces(dist, truncate)
    rng = np.random.default_rng(seed)
    best: LloydState | None = None
    best_key = None
    completed = 0
    attempts = 0
    while completed < restarts:
        attempts += 1
        if attempts > 40 * restarts:
            raise ConsistencyError("Lloyd restarts keep degenerating")
        init = inverse_cdf(fp, np.sort(rng.random(n)))
        if np.any(np.diff(init) <= 0):
            continue
        try:
            state = lloyd(fp, init, max_iter=max_iter, tol=tol)
        except ZeroMassCellError:
            continue
        completed += 1
        key = (state.distortion, state.points)
        if best_key is None or key < best_key:
            best, best_key = state, key
    return best


def lloyd_crosscheck(dist: PiecewiseUniform, n: int, **kwargs) -> tuple[LloydState, Fraction]:
    """Multi-start Lloyd plus exact re-evaluation of its points.

    The returned Fraction is the distortion of the float points (taken at
    their exact binary values) under the true untruncated distribution,
    directly comparable to the exact optimal error.
    """
    state = lloyd_multistart(dist, n, **kwargs)
    return state, dist.distortion(state.points)


def brute_force_infinite(n: int, cap: int = 20) -> CanonicalSequence:
    """Exhaustive search over every block composition for the infinite family.

    Scores sum_j (1/12) 18^(-j) / c_j^2 + (25/204) 18^(-k) for all ordered
    compositions (c_1..c_k) of n - 1, in integers after scaling by
    204 * 18^K * lcm(1..n-1)^2: the block term becomes 17 * 18^(K-j) * (L/c)^2
    and the tail term 25 * 18^(K-k) * L^2. Exponential in n; ``cap`` guards
    against accidental huge calls. A tied optimum raises ConsistencyError.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if n > cap:
        raise ValueError(f"n={n} above the safety cap {cap}")
    total = n - 1
    big_k = total
    lcm = math.lcm(*range(1, total + 1))
    p18 = [18 ** (big_k - j) for j in range(big_k + 1)]
    sq = [0] + [(lcm // c) ** 2 for c in range(1, total + 1)]
    best_score: int | None = None
    best_blocks: list[tuple[int, ...]] = []

    def walk(j: int, remaining: int, prefix: int, blocks: tuple[int, ...]):
        nonlocal best_score, best_blocks
        # every further term is positive, so prefix >= best cannot win or tie
        if best_score is not None and prefix >= best_score:
            return
        if remaining == 0:
            score = prefix + 25 * p18[j - 1] * lcm * lcm
            if best_score is None or score < best_score:
                best_score, best_blocks = score, [blocks]
            elif score == best_score:
                best_blocks.append(blocks)
            return
        for c in range(remaining, 0, -1):
            walk(j + 1, remaining - c, prefix + 17 * p18[j] * sq[c], blocks + (c,))

    walk(1, total, 0, ())
    if len(best_blocks) != 1:
        raise ConsistencyError(f"tied optima for n={n}: {best_blocks}")
    return CanonicalSequence(best_blocks[0])


def brute_force_finite(dist: PiecewiseUniform, n: int):
    """Exhaustive search over every allocation for a finite distribution.

    Returns every optimal allocation as (counts, exact error) pairs sorted
    descending by counts, using its own integer scoring (piece weights
    mass * length^2 / 12 cleared of denominators), so it shares nothing
    with the greedy allocator it checks.
    """
    from .allocation import Allocation  # local import to keep layering one-way

    if dist.kind != FINITE:
        raise ValueError("finite distributions only")
    m = dist.piece_count
    if n < m:
        raise ValueError(f"need n >= {m}")
    weights = []
    for j in range(1, m + 1):
        p = dist.piece(j)
        weights.append(p.mass * p.length**2 / 12)
    den_lcm = math.lcm(*(w.denominator for w in weights))
    scaled = []
    for w in weights:
        sw = w * den_lcm
        if sw.denominator != 1:
            raise ConsistencyError("weight scaling failed")
        scaled.append(sw.numerator)
    maxc = n - m + 1
    lcm = math.lcm(*range(1, maxc + 1))
    sq = [0] + [(lcm // c) ** 2 for c in range(1, maxc + 1)]
    best_score: int | None = None
    best_counts: list[tuple[int, ...]] = []

    def walk(j: int, remaining: int, prefix: int, counts: tuple[int, ...]):
        nonlocal best_score, best_counts
        if best_score is not None and prefix > best_score:
            return
        if j == m - 1:
            score = prefix + scaled[j] * sq[remaining]
            if best_score is None or score < best_score:
                best_score, best_counts = score, [counts + (remaining,)]
            elif score == best_score:
                best_counts.append(counts + (remaining,))
            return
        # leave at least one point for each remaining piece
        for c in range(1, remaining - (m - j - 1) + 1):
            walk(j + 1, remaining - c, prefix + scaled[j] * sq[c], counts + (c,))

    walk(0, n, 0, ())
    error = Fraction(best_score, den_lcm * lcm * lcm)
    return tuple(Allocation(c, error) for c in sorted(best_counts, reverse=True))
