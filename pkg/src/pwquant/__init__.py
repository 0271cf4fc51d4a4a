"""Exact optimal quantization of piecewise-uniform distributions.

Core surface: build a distribution (``PiecewiseUniform``), get provably
optimal n-point quantizers and exact rational errors
(``sequence_of_order`` and friends for the infinite geometric family,
``optimal_allocations`` for finite piece lists), cross-check them with
independent oracles (``brute_force_infinite``, ``brute_force_finite``,
``lloyd_multistart``), and benchmark against random and Kronecker point
sets (``compare_table``, ``discrepancy``). The HTTP service lives in
``pwquant.service``, the command line client in ``pwquant.cli``.
"""

__version__ = "0.1.0"

from .allocation import (
    Allocation,
    allocation_error,
    optimal_allocations,
    piece_weights,
    quantizer_of_allocation,
)
from .canonical import (
    CanonicalSequence,
    iter_sequences,
    next_sequence,
    pair_split_heuristic,
    pair_split_optimum,
    quantizer_of_sequence,
    reference_table,
    sequence_error,
    sequence_of_order,
)
from .defaults import DEFAULT_SEED
from .distributions import PiecewiseUniform, QuantizerSet, UniformPiece
from .errors import ConsistencyError, ZeroMassCellError
from .oracle import (
    FloatPieces,
    LloydState,
    brute_force_finite,
    brute_force_infinite,
    inverse_cdf,
    lloyd,
    lloyd_crosscheck,
    lloyd_multistart,
    piecewise_distortion,
)
from .rationals import Rational, as_float, compare, format_rational, parse_rational, rat_pow, rational
from .stochastic import (
    GOLDEN_THETA,
    DiscrepancyResult,
    PointSample,
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

__all__ = [
    "__version__",
    "Allocation",
    "CanonicalSequence",
    "ConsistencyError",
    "DEFAULT_SEED",
    "DiscrepancyResult",
    "FloatPieces",
    "GOLDEN_THETA",
    "LloydState",
    "PiecewiseUniform",
    "PointSample",
    "QuantizerSet",
    "Rational",
    "UniformPiece",
    "ZeroMassCellError",
    "allocation_error",
    "as_float",
    "brute_force_finite",
    "brute_force_infinite",
    "circular_gaps",
    "compare",
    "compare_table",
    "discrepancy",
    "distortion_of_sample",
    "expected_min_distance",
    "format_rational",
    "iid_sample",
    "inverse_cdf",
    "iter_sequences",
    "kronecker_sample",
    "lloyd",
    "lloyd_crosscheck",
    "lloyd_multistart",
    "mean_min_distance_stats",
    "min_distance",
    "next_sequence",
    "optimal_allocations",
    "optimal_error",
    "pair_split_heuristic",
    "pair_split_optimum",
    "parse_rational",
    "piece_weights",
    "piecewise_distortion",
    "quantizer_of_allocation",
    "quantizer_of_sequence",
    "rat_pow",
    "rational",
    "reference_table",
    "resolve_theta",
    "sequence_error",
    "sequence_of_order",
    "survival_curve",
    "survival_law",
    "survival_limit",
]
