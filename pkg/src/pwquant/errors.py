"""Package-wide exception types."""


class ConsistencyError(RuntimeError):
    """An internal invariant that is mathematically guaranteed failed anyway.

    Raised for exact ties where a unique optimum is proven, non-monotone
    iteration progress, and violated closed-form bounds. Any occurrence
    means a bug, not a bad input.
    """


class ZeroMassCellError(RuntimeError):
    """A Lloyd iteration produced a Voronoi cell carrying no probability mass."""
