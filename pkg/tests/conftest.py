import random
from fractions import Fraction

import pytest

from pwquant import PiecewiseUniform, UniformPiece

# filled in by test_acceptance.py, printed after the run
ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)


@pytest.fixture
def inf():
    return PiecewiseUniform.infinite_geometric()


@pytest.fixture
def three():
    return PiecewiseUniform.three_piece()


def random_finite(rng: random.Random, m: int) -> PiecewiseUniform:
    """A random finite distribution with m pieces and exact unit mass.

    Integer mass shares keep everything rational; repeated shares are
    likely on purpose, so tied piece weights (and multiple optimal
    allocations) show up in the tests.
    """
    shares = [rng.randint(1, 9) for _ in range(m)]
    total = sum(shares)
    pieces = []
    x = Fraction(0)
    for share in shares:
        left = x + Fraction(rng.randint(0, 4), 12)
        right = left + Fraction(rng.randint(1, 8), 12)
        pieces.append(UniformPiece(left, right, Fraction(share, total) / (right - left)))
        x = right
    return PiecewiseUniform.finite(pieces)
