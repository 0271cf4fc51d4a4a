"""Optimal point allocation across the pieces of a finite distribution.

For a finite piecewise-uniform distribution the optimal n-point quantizer
assigns c_j >= 1 midpoint-spaced points to piece j, and the error is
separable: sum_j w_j / c_j^2 with piece weight w_j = mass_j length_j^2 / 12.
The weights decide everything.

``optimal_allocations`` minimizes that sum exactly. Greedy point-by-point
assignment is provably optimal here (the per-piece gains are decreasing),
and the set of ALL optimal allocations is recovered by walking single-point
exchanges that keep the error unchanged: the minimizer set of a separable
convex objective over a simplex of integer compositions is connected under
such exchanges. Distributions with equal-weight pieces routinely have
several optima, so the full set matters.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .distributions import FINITE, PiecewiseUniform, QuantizerSet
from .errors import ConsistencyError


@dataclass(frozen=True)
class Allocation:
    """Per-piece point counts with the exact resulting error."""

    counts: tuple[int, ...]
    error: Fraction

    def __post_init__(self):
        if len(self.counts) == 0 or any(c < 1 for c in self.counts):
            raise ValueError("every piece needs at least one point")

    @property
    def total(self) -> int:
        return sum(self.counts)


def piece_weights(dist: PiecewiseUniform) -> list[Fraction]:
    """w_j = mass_j length_j^2 / 12 for every piece of a finite distribution."""
    if dist.kind != FINITE:
        raise ValueError("piece weights need a finite distribution")
    return [dist.segment_quantizer(j, 1).distortion for j in range(1, dist.piece_count + 1)]


def allocation_error(dist: PiecewiseUniform, counts) -> Fraction:
    """Exact error of assigning counts[j] points to piece j."""
    w = piece_weights(dist)
    counts = tuple(counts)
    if len(counts) != len(w):
        raise ValueError("one count per piece required")
    if any(c < 1 for c in counts):
        raise ValueError("every piece needs at least one point")
    return sum(wj / (c * c) for wj, c in zip(w, counts))


def _error_of(w: list[Fraction], counts) -> Fraction:
    return sum(wj / (c * c) for wj, c in zip(w, counts))


def optimal_allocations(dist: PiecewiseUniform, n: int) -> tuple[Allocation, ...]:
    """All optimal allocations of n points, sorted descending by counts.

    Requires n >= piece count; with fewer points than pieces the
    block-per-piece structure breaks down and this module does not apply.
    """
    w = piece_weights(dist)
    m = len(w)
    if n < m:
        raise ValueError(f"need n >= {m} points for {m} pieces, got {n}")

    def gain(j: int, c: int) -> Fraction:
        return w[j] * (Fraction(1, c * c) - Fraction(1, (c + 1) ** 2))

    counts = [1] * m
    heap = [(-gain(j, 1), j) for j in range(m)]
    heapq.heapify(heap)
    for _ in range(n - m):
        _, j = heapq.heappop(heap)
        counts[j] += 1
        heapq.heappush(heap, (-gain(j, counts[j]), j))

    best_err = _error_of(w, counts)
    start = tuple(counts)
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for a in range(m):
            if cur[a] < 2:
                continue
            drop = w[a] * (Fraction(1, (cur[a] - 1) ** 2) - Fraction(1, cur[a] ** 2))
            for b in range(m):
                if b == a:
                    continue
                rise = w[b] * (Fraction(1, (cur[b] + 1) ** 2) - Fraction(1, cur[b] ** 2))
                delta = drop + rise
                if delta < 0:
                    raise ConsistencyError(f"greedy missed a better allocation near {cur}")
                if delta == 0:
                    nxt = list(cur)
                    nxt[a] -= 1
                    nxt[b] += 1
                    t = tuple(nxt)
                    if t not in seen:
                        seen.add(t)
                        stack.append(t)
    return tuple(Allocation(c, best_err) for c in sorted(seen, reverse=True))


def quantizer_of_allocation(dist: PiecewiseUniform, counts) -> QuantizerSet:
    """Materialize the points of an allocation: per-piece midpoint grids."""
    counts = counts.counts if isinstance(counts, Allocation) else tuple(counts)
    pts: list[Fraction] = []
    err = Fraction(0)
    for j, c in enumerate(counts, 1):
        seg = dist.segment_quantizer(j, c)
        pts.extend(seg.points)
        err += seg.distortion
    if err != allocation_error(dist, counts):
        raise ConsistencyError("segment errors disagree with the allocation error")
    return QuantizerSet(tuple(pts), err)
