"""Piecewise-uniform distributions and exact mean-square quantization error.

Two families are bundled. ``PiecewiseUniform.finite(...)`` takes any finite
list of disjoint uniform pieces whose masses sum to exactly 1, with
``three_piece()`` and ``uniform()`` as ready-made instances.
``PiecewiseUniform.infinite_geometric()`` is the self-similar family with
countably many pieces accumulating at 1: piece j lives on
[1 - 3^(1-j), 1 - 2*3^(-j)] with density (3/2)^j, so it carries mass 2^(-j)
on an interval of length 3^(-j).

Everything here is exact: endpoints, densities, moments and distortions are
``fractions.Fraction`` values, and ``distortion`` integrates the squared
distance to the nearest point of a finite set in closed form, including the
full infinite tail. All objects are immutable and all methods are pure.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction

from .rationals import format_rational, parse_rational

FINITE = "finite"
INFINITE_GEOMETRIC = "infinite_geometric"


def _frac(x) -> Fraction:
    # Fraction() is exact for int, Fraction and float inputs alike; floats
    # are taken at their exact binary value, which is what the float-path
    # cross-checks need.
    return Fraction(x)


@dataclass(frozen=True)
class UniformPiece:
    """One uniform piece: constant density on [left, right]."""

    left: Fraction
    right: Fraction
    density: Fraction

    def __post_init__(self):
        if not self.left < self.right:
            raise ValueError("piece needs left < right")
        if self.density <= 0:
            raise ValueError("piece density must be positive")
        if self.mass > 1:
            raise ValueError("piece mass exceeds 1")

    @property
    def length(self) -> Fraction:
        return self.right - self.left

    @property
    def mass(self) -> Fraction:
        return self.density * self.length

    @property
    def midpoint(self) -> Fraction:
        return (self.left + self.right) / 2


@dataclass(frozen=True)
class QuantizerSet:
    """A strictly increasing point set with its exact distortion."""

    points: tuple[Fraction, ...]
    distortion: Fraction

    def __post_init__(self):
        if len(self.points) == 0:
            raise ValueError("quantizer needs at least one point")
        if any(a >= b for a, b in zip(self.points, self.points[1:])):
            raise ValueError("quantizer points must be strictly increasing")
        if self.distortion < 0:
            raise ValueError("distortion cannot be negative")

    @property
    def n(self) -> int:
        return len(self.points)

    def points_float(self) -> list[float]:
        return [float(p) for p in self.points]


class PiecewiseUniform:
    """A probability distribution made of uniform pieces.

    ``kind`` is ``"finite"`` (explicit piece list) or
    ``"infinite_geometric"`` (pieces generated on demand, accumulating
    at 1). Instances are immutable value objects.
    """

    __slots__ = ("kind", "_pieces")

    def __init__(self, kind: str, pieces: tuple[UniformPiece, ...] | None):
        if kind == FINITE:
            if not pieces:
                raise ValueError("finite distribution needs at least one piece")
            for a, b in zip(pieces, pieces[1:]):
                if a.right > b.left:
                    raise ValueError("pieces must be disjoint and ordered")
            total = sum(p.mass for p in pieces)
            if total != 1:
                raise ValueError(f"piece masses sum to {total}, expected exactly 1")
        elif kind == INFINITE_GEOMETRIC:
            if pieces is not None:
                raise ValueError("the infinite family has no explicit piece list")
        else:
            raise ValueError(f"unknown kind: {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "_pieces", pieces)

    def __setattr__(self, name, value):
        raise AttributeError("PiecewiseUniform is immutable")

    def __eq__(self, other):
        if not isinstance(other, PiecewiseUniform):
            return NotImplemented
        return (self.kind, self._pieces) == (other.kind, other._pieces)

    def __hash__(self):
        return hash((self.kind, self._pieces))

    def __repr__(self):
        if self.kind == INFINITE_GEOMETRIC:
            return "PiecewiseUniform.infinite_geometric()"
        return f"PiecewiseUniform.finite({list(self._pieces)!r})"

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def finite(cls, pieces) -> "PiecewiseUniform":
        return cls(FINITE, tuple(pieces))

    @classmethod
    def infinite_geometric(cls) -> "PiecewiseUniform":
        return cls(INFINITE_GEOMETRIC, None)

    @classmethod
    def uniform(cls, left=0, right=1) -> "PiecewiseUniform":
        left, right = _frac(left), _frac(right)
        return cls.finite([UniformPiece(left, right, 1 / (right - left))])

    @classmethod
    def three_piece(cls) -> "PiecewiseUniform":
        """The bundled three-piece benchmark density.

        Mass 1/2 spread on [0, 1/3] plus mass 1/4 on each of [2/3, 7/9]
        and [8/9, 1].
        """
        return cls.finite(
            [
                UniformPiece(Fraction(0), Fraction(1, 3), Fraction(3, 2)),
                UniformPiece(Fraction(2, 3), Fraction(7, 9), Fraction(9, 4)),
                UniformPiece(Fraction(8, 9), Fraction(1), Fraction(9, 4)),
            ]
        )

    # ------------------------------------------------------------------
    # pieces

    @property
    def piece_count(self) -> int | None:
        """Number of pieces, or None for the infinite family."""
        return None if self.kind == INFINITE_GEOMETRIC else len(self._pieces)

    def piece(self, j: int) -> UniformPiece:
        """The j-th piece, 1-based."""
        if j < 1:
            raise ValueError("piece index is 1-based")
        if self.kind == FINITE:
            if j > len(self._pieces):
                raise ValueError(f"piece {j} out of range")
            return self._pieces[j - 1]
        p3 = 3**j
        return UniformPiece(1 - Fraction(3, p3), 1 - Fraction(2, p3), Fraction(p3, 2**j))

    @property
    def support_hull(self) -> tuple[Fraction, Fraction]:
        """Smallest closed interval containing the support."""
        if self.kind == INFINITE_GEOMETRIC:
            return (Fraction(0), Fraction(1))
        return (self._pieces[0].left, self._pieces[-1].right)

    # ------------------------------------------------------------------
    # moments

    def _tail_raw(self, k: int) -> tuple[Fraction, Fraction, Fraction]:
        # Mass, first and second moment (about 0) of pieces j > k of the
        # infinite family, from the geometric sums S_r = sum_{j>k} r^(-j):
        # the piece means 1 - (5/2) 3^(-j) and uniform second moments
        # expand into S_2, S_6 and S_18 terms.
        s2 = Fraction(1, 2**k)
        s6 = Fraction(1, 5 * 6**k)
        s18 = Fraction(1, 17 * 18**k)
        mass = s2
        m1 = s2 - Fraction(5, 2) * s6
        m2 = s2 - 5 * s6 + Fraction(19, 3) * s18
        return mass, m1, m2

    def tail_moments(self, k: int) -> tuple[Fraction, Fraction, Fraction]:
        """Mass, conditional mean and central second moment of pieces j > k.

        Only defined for the infinite family. ``k >= 1``; the triple is
        (2^(-k), 1 - (1/2) 3^(-k), (25/204) 18^(-k)), computed from the
        geometric sums rather than pasted in.
        """
        if self.kind != INFINITE_GEOMETRIC:
            raise ValueError("tail moments only exist for the infinite family")
        if k < 1:
            raise ValueError("k must be >= 1")
        mass, m1, m2 = self._tail_raw(k)
        mean = m1 / mass
        return mass, mean, m2 - mass * mean**2

    def mean(self) -> Fraction:
        if self.kind == INFINITE_GEOMETRIC:
            return self._tail_raw(0)[1]
        return sum(p.mass * p.midpoint for p in self._pieces)

    def variance(self) -> Fraction:
        """Central second moment, also the 1-point quantization error."""
        if self.kind == INFINITE_GEOMETRIC:
            mass, m1, m2 = self._tail_raw(0)
            return m2 - m1**2
        mu = self.mean()
        m2 = sum(p.density * (p.right**3 - p.left**3) / 3 for p in self._pieces)
        return m2 - mu**2

    def _prefix(self, t: Fraction) -> tuple[Fraction, Fraction]:
        # mass and first moment on (-inf, t]
        if self.kind == FINITE:
            pieces = self._pieces
        else:
            if t >= 1:
                return Fraction(1), self._tail_raw(0)[1]
            pieces = self._iter_pieces_left_of(t)
        mass = Fraction(0)
        mom = Fraction(0)
        for p in pieces:
            hi = min(p.right, t)
            if hi > p.left:
                mass += p.density * (hi - p.left)
                mom += p.density * (hi**2 - p.left**2) / 2
        return mass, mom

    def _iter_pieces_left_of(self, t: Fraction):
        j = 1
        while True:
            p = self.piece(j)
            if p.left >= t:
                return
            yield p
            j += 1

    def conditional_mean(self, lo, hi) -> Fraction:
        """Mean of the distribution restricted to [lo, hi]."""
        lo, hi = _frac(lo), _frac(hi)
        if lo >= hi:
            raise ValueError("need lo < hi")
        mass_hi, mom_hi = self._prefix(hi)
        mass_lo, mom_lo = self._prefix(lo)
        mass = mass_hi - mass_lo
        if mass == 0:
            raise ValueError("interval carries no probability mass")
        return (mom_hi - mom_lo) / mass

    # ------------------------------------------------------------------
    # quantization

    def segment_quantizer(self, j: int, n: int) -> QuantizerSet:
        """Optimal n-point quantizer of piece j alone.

        Uniform pieces are quantized by the n cell midpoints
        left + (2i-1) length / (2n), with error mass * length^2 / (12 n^2).
        """
        if n < 1:
            raise ValueError("n must be >= 1")
        p = self.piece(j)
        step = p.length / (2 * n)
        pts = tuple(p.left + (2 * i - 1) * step for i in range(1, n + 1))
        return QuantizerSet(pts, p.mass * p.length**2 / (12 * n**2))

    def distortion(self, points) -> Fraction:
        """Exact mean squared distance to the nearest point of ``points``.

        ``points`` may be any iterable of values ``Fraction`` accepts
        (ints, Fractions, floats at their exact binary value) and must be
        strictly increasing. Works for arbitrary point locations, including
        points outside the support. For the infinite family the tail beyond
        the last piece that any Voronoi boundary reaches is folded in via
        its exact moments, so the sum over infinitely many pieces is finite
        work.
        """
        pts = [_frac(x) for x in points]
        if not pts:
            raise ValueError("need at least one point")
        if any(a >= b for a, b in zip(pts, pts[1:])):
            raise ValueError("points must be strictly increasing")
        mids = [(a + b) / 2 for a, b in zip(pts, pts[1:])]
        if self.kind == FINITE:
            return sum(self._piece_distortion(p, pts, mids) for p in self._pieces)
        return self._distortion_infinite(pts, mids)

    @staticmethod
    def _piece_distortion(piece: UniformPiece, pts, mids) -> Fraction:
        # integrate density (x - nearest)^2 over one piece, sweeping the
        # Voronoi cells that intersect it
        n = len(pts)
        c = bisect.bisect_right(mids, piece.left)
        total = Fraction(0)
        lo = piece.left
        while lo < piece.right:
            hi = piece.right if c >= n - 1 else min(piece.right, mids[c])
            if hi > lo:
                a = pts[c]
                total += piece.density * ((hi - a) ** 3 - (lo - a) ** 3) / 3
            lo = hi
            c += 1
        return total

    def _distortion_infinite(self, pts, mids) -> Fraction:
        one = Fraction(1)
        # cell whose closure contains the accumulation point 1
        istar = bisect.bisect_left(mids, one)
        left_bound = mids[istar - 1] if istar >= 1 else None
        # smallest k with 1 - 3^(-k) >= left bound: pieces beyond k lie
        # entirely inside cell istar
        k = 0
        if left_bound is not None and left_bound > 0:
            while one - Fraction(1, 3**k) < left_bound:
                k += 1
        total = Fraction(0)
        for j in range(1, k + 1):
            total += self._piece_distortion(self.piece(j), pts, mids)
        mass, m1, m2 = self._tail_raw(k)
        a = pts[istar]
        # parallel axis: E (X - a)^2 = central moment + mass (mean - a)^2
        mean = m1 / mass
        total += (m2 - mass * mean**2) + mass * (mean - a) ** 2
        return total

    # ------------------------------------------------------------------
    # wire format

    def to_config(self) -> dict:
        """Plain-dict form used by the JSON config file format."""
        if self.kind == INFINITE_GEOMETRIC:
            return {"kind": INFINITE_GEOMETRIC}
        return {
            "kind": FINITE,
            "pieces": [
                {
                    "left": format_rational(p.left),
                    "right": format_rational(p.right),
                    "density": format_rational(p.density),
                }
                for p in self._pieces
            ],
        }

    @classmethod
    def from_config(cls, config: dict) -> "PiecewiseUniform":
        kind = config.get("kind")
        if kind == INFINITE_GEOMETRIC:
            return cls.infinite_geometric()
        if kind == FINITE:
            raw = config.get("pieces")
            if not raw:
                raise ValueError("finite config needs a non-empty pieces list")
            pieces = [
                UniformPiece(
                    parse_rational(p["left"]),
                    parse_rational(p["right"]),
                    parse_rational(p["density"]),
                )
                for p in raw
            ]
            return cls.finite(pieces)
        raise ValueError(f"unknown distribution kind: {kind!r}")
