"""Exact optimal quantizers of the infinite geometric family.

An optimal n-point quantizer of the infinite family splits into blocks:
``blocks[j-1]`` points quantize piece j on its own for j = 1..k, and a
single extra point sits at the conditional mean of everything beyond piece
k. ``CanonicalSequence`` stores the block counts without that trailing tail
point, so the quantizer order is ``1 + sum(blocks)``; ``printed()`` appends
the tail 1 for display.

``next_sequence`` advances order n to n+1 by spending one extra point where
it buys the largest exact error decrease, either incrementing one block or
starting a new block of 1 (which splits the old tail). The chain starting
from the order-2 sequence (1,) enumerates the optimum for every n, and
``sequence_error`` gives the exact optimal error

    sum_j mass_j length_j^2 / (12 blocks[j-1]^2)  +  tail central moment.

All arithmetic is exact; ties cannot happen (the optimum is unique), so an
exact tie raises ConsistencyError instead of being broken arbitrarily.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .distributions import PiecewiseUniform, QuantizerSet
from .errors import ConsistencyError

_INF = PiecewiseUniform.infinite_geometric()


@dataclass(frozen=True)
class CanonicalSequence:
    """Block counts of an optimal quantizer, tail point not included.

    Shape law: counts are strictly decreasing except that the final block,
    which must be 1 whenever there is more than one block, may repeat the
    previous value. Violations raise ValueError at construction, so every
    sequence object in the package is structurally valid.
    """

    blocks: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(int(b) for b in self.blocks))
        b = self.blocks
        if len(b) == 0:
            raise ValueError("need at least one block")
        if any(c < 1 for c in b):
            raise ValueError("block counts must be >= 1")
        if any(b[i] <= b[i + 1] for i in range(len(b) - 2)):
            raise ValueError(f"blocks not strictly decreasing before the last: {b}")
        if len(b) >= 2 and b[-1] != 1:
            raise ValueError(f"last block must be 1: {b}")

    @property
    def order(self) -> int:
        """Total number of quantizer points, tail point included."""
        return 1 + sum(self.blocks)

    def printed(self) -> tuple[int, ...]:
        """Display form with the tail point written as a trailing 1."""
        return self.blocks + (1,)

    def __str__(self):
        return "{" + ", ".join(str(c) for c in self.printed()) + "}"


def _blocks(seq) -> tuple[int, ...]:
    if isinstance(seq, CanonicalSequence):
        return seq.blocks
    return CanonicalSequence(tuple(seq)).blocks


def sequence_error(seq) -> Fraction:
    """Exact n-th quantization error of the quantizer described by ``seq``."""
    b = _blocks(seq)
    err = sum(_INF.segment_quantizer(j, c).distortion for j, c in enumerate(b, 1))
    return err + _INF.tail_moments(len(b))[2]


def quantizer_of_sequence(seq) -> QuantizerSet:
    """Materialize the actual points: per-piece midpoints plus the tail mean."""
    b = _blocks(seq)
    pts: list[Fraction] = []
    for j, c in enumerate(b, 1):
        pts.extend(_INF.segment_quantizer(j, c).points)
    pts.append(_INF.tail_moments(len(b))[1])
    return QuantizerSet(tuple(pts), sequence_error(b))


def _increment_decrease(j: int, c: int) -> Fraction:
    # error drop from growing block j from c to c+1 points
    w = _INF.segment_quantizer(j, 1).distortion  # mass_j len_j^2 / 12
    return w * (Fraction(1, c * c) - Fraction(1, (c + 1) ** 2))


def _append_decrease(k: int) -> Fraction:
    # error drop from splitting the tail after k blocks into piece k+1
    # (1 point) plus the tail after k+1 blocks
    old = _INF.tail_moments(k)[2]
    new = _INF.segment_quantizer(k + 1, 1).distortion + _INF.tail_moments(k + 1)[2]
    return old - new


def next_sequence(seq: CanonicalSequence) -> CanonicalSequence:
    """Optimal sequence of order n+1 from the one of order n.

    Candidates are every single-block increment plus appending a new block
    of 1; the exact maximum decrease wins. The winner is provably unique,
    so an exact tie raises ConsistencyError.
    """
    b = _blocks(seq)
    k = len(b)
    gains: list[Fraction] = [_increment_decrease(j, c) for j, c in enumerate(b, 1)]
    gains.append(_append_decrease(k))
    best = max(gains)
    if best <= 0:
        raise ConsistencyError("adding a point failed to decrease the error")
    winners = [i for i, g in enumerate(gains) if g == best]
    if len(winners) > 1:
        raise ConsistencyError(f"exact tie between candidates {winners} at {b}")
    i = winners[0]
    if i == k:
        new = b + (1,)
    else:
        new = b[:i] + (b[i] + 1,) + b[i + 1 :]
    return CanonicalSequence(new)


# chain cache: _CHAIN[i] is the sequence of order i + 2; append-only, so
# concurrent readers at worst duplicate work
_CHAIN: list[CanonicalSequence] = [CanonicalSequence((1,))]


def sequence_of_order(n: int) -> CanonicalSequence:
    """The optimal sequence with exactly n points, n >= 2.

    (n = 1 has no block structure; the 1-point optimum is the mean with
    error equal to the variance.)
    """
    if n < 2:
        raise ValueError("sequences are defined for n >= 2")
    chain = _CHAIN
    while len(chain) < n - 1:
        chain.append(next_sequence(chain[-1]))
    return chain[n - 2]


def iter_sequences(max_order: int, min_order: int = 2):
    """Yield the optimal sequences for min_order..max_order in order."""
    if min_order < 2:
        raise ValueError("min_order must be >= 2")
    for n in range(min_order, max_order + 1):
        yield sequence_of_order(n)


def pair_split_optimum(m: int, piece_index: int = 1) -> tuple[int, int]:
    """Exact best split of m points between pieces i and i+1 in isolation.

    Minimizes 18/u^2 + 1/(m-u)^2 over u = 1..m-1 (the common positive
    factor mass length^2 18^(-1) / 12 of piece i+1 is dropped; the argmin
    does not depend on the piece index). Returns (u, m-u).
    """
    if m < 2:
        raise ValueError("need m >= 2 points to split")
    if piece_index < 1:
        raise ValueError("piece index is 1-based")
    best_u = None
    best_val = None
    for u in range(1, m):
        val = Fraction(18, u * u) + Fraction(1, (m - u) ** 2)
        if best_val is None or val < best_val:
            best_u, best_val = u, val
        elif val == best_val:
            raise ConsistencyError(f"exact pair-split tie at m={m}: {best_u} vs {u}")
    return best_u, m - best_u


def pair_split_heuristic(m: int) -> float:
    """Closed-form continuous approximation of the pair split.

    Rounding this is NOT reliable (m = 9 rounds to 7 where the true optimum
    is 6); it exists for comparison, use pair_split_optimum for answers.
    """
    return m * (18.0 - 3.0 * 12.0 ** (1.0 / 3.0) + 18.0 ** (1.0 / 3.0)) / 19.0


def reference_table() -> list[dict]:
    """The bundled golden table: transcribed optimal sequences for n = 2..58.

    Rows are ``{"n": int, "sequence": [ints, tail 1 included],
    "V_n": "num/den"}``. The sequences were transcribed by hand, not
    generated by this engine, so comparing against them is a real check.
    """
    import importlib.resources
    import json

    text = importlib.resources.files("pwquant").joinpath("data/reference_table.json").read_text()
    return json.loads(text)
