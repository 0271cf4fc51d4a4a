"""Exact distributions: moments, conditional means, closed-form distortion."""

import random
from fractions import Fraction as F

import pytest

from pwquant import PiecewiseUniform, QuantizerSet, UniformPiece


def test_piece_validation():
    with pytest.raises(ValueError):
        UniformPiece(F(1, 2), F(1, 2), F(1))  # empty
    with pytest.raises(ValueError):
        UniformPiece(F(0), F(1), F(0))  # no density
    with pytest.raises(ValueError):
        UniformPiece(F(0), F(1), F(2))  # mass 2


def test_finite_validation():
    good = UniformPiece(F(0), F(1, 2), F(1))
    with pytest.raises(ValueError):
        PiecewiseUniform.finite([])
    with pytest.raises(ValueError):
        PiecewiseUniform.finite([good])  # mass 1/2 only
    with pytest.raises(ValueError):
        PiecewiseUniform.finite(
            [UniformPiece(F(0), F(1, 2), F(1)), UniformPiece(F(1, 4), F(3, 4), F(1))]
        )  # overlap


def test_infinite_piece_family(inf):
    # piece j: [1 - 3^(1-j), 1 - 2 3^(-j)], density (3/2)^j, mass 2^(-j)
    for j in (1, 2, 3, 7):
        p = inf.piece(j)
        assert p.left == 1 - F(3, 3**j)
        assert p.right == 1 - F(2, 3**j)
        assert p.density == F(3**j, 2**j)
        assert p.mass == F(1, 2**j)
        assert p.length == F(1, 3**j)
    assert inf.piece(1).left == 0
    assert inf.piece_count is None
    assert inf.support_hull == (0, 1)
    # partial masses telescope to 1
    for big in (10, 40):
        assert sum(inf.piece(j).mass for j in range(1, big + 1)) == 1 - F(1, 2**big)
    with pytest.raises(ValueError):
        inf.piece(0)


def test_means_and_variances(inf, three):
    assert inf.mean() == F(1, 2)
    assert inf.variance() == F(25, 204)
    assert three.mean() == F(1, 2)
    assert three.variance() == F(119, 972)
    u = PiecewiseUniform.uniform()
    assert u.mean() == F(1, 2)
    assert u.variance() == F(1, 12)


def test_three_piece_layout(three):
    assert three.piece_count == 3
    assert [three.piece(j).mass for j in (1, 2, 3)] == [F(1, 2), F(1, 4), F(1, 4)]
    assert three.piece(2).left == F(2, 3) and three.piece(2).right == F(7, 9)
    assert three.piece(3).left == F(8, 9) and three.piece(3).right == F(1)
    assert three.support_hull == (0, 1)


def test_tail_moments_closed_forms(inf):
    assert inf.tail_moments(1) == (F(1, 2), F(5, 6), F(25, 3672))
    assert inf.tail_moments(2) == (F(1, 4), F(17, 18), F(25, 66096))
    for k in (1, 2, 3, 6):
        mass, mean, sc = inf.tail_moments(k)
        assert mass == F(1, 2**k)
        assert mean == 1 - F(1, 2 * 3**k)
        assert sc == F(25, 204) * F(1, 18**k)
    with pytest.raises(ValueError):
        inf.tail_moments(0)


def test_tail_moments_against_partial_sums(inf):
    # independent oracle: sum the pieces explicitly to depth K and bound the
    # remainder with exact rational inequalities
    K = 40
    for k in (1, 2, 3):
        mass, mean, sc = inf.tail_moments(k)
        ps = [inf.piece(j) for j in range(k + 1, K + 1)]
        m0 = sum(p.mass for p in ps)
        m1 = sum(p.mass * p.midpoint for p in ps)
        m2 = sum(p.mass * (p.midpoint**2 + p.length**2 / 12) for p in ps)
        assert m0 + F(1, 2**K) == mass
        r1 = mass * mean - m1
        lo = F(1, 2**K) * (1 - F(1, 3**K))
        assert lo <= r1 <= F(1, 2**K)
        r2 = (sc + mass * mean**2) - m2
        assert F(1, 2**K) * (1 - F(1, 3**K)) ** 2 <= r2 <= F(1, 2**K)


def test_conditional_means(inf, three):
    # uniform pieces have their midpoint as conditional mean
    for dist in (inf, three):
        for j in (1, 2, 3):
            p = dist.piece(j)
            assert dist.conditional_mean(p.left, p.right) == p.midpoint
    # tail intervals of the infinite family against the closed form
    for k in (1, 2, 4):
        assert inf.conditional_mean(1 - F(1, 3**k), 2) == inf.tail_moments(k)[1]
    assert inf.conditional_mean(F(1, 3), 1) == F(5, 6)  # everything beyond piece 1
    assert inf.conditional_mean(-5, 5) == F(1, 2)
    with pytest.raises(ValueError):
        three.conditional_mean(F(1, 3), F(2, 3))  # gap: zero mass
    with pytest.raises(ValueError):
        inf.conditional_mean(F(1, 2), F(1, 2))


def test_segment_quantizer(inf, three):
    q = inf.segment_quantizer(1, 3)
    assert q.points == (F(1, 18), F(1, 6), F(5, 18))
    assert q.distortion == F(1, 2) * F(1, 9) / (12 * 9)
    for j, n in [(1, 1), (2, 3), (4, 2)]:
        q = inf.segment_quantizer(j, n)
        # block error (1/12) 18^(-j) / n^2
        assert q.distortion == F(1, 12) * F(1, 18**j) / n**2
    assert three.segment_quantizer(2, 1).points == (F(13, 18),)
    with pytest.raises(ValueError):
        inf.segment_quantizer(1, 0)
    with pytest.raises(ValueError):
        three.segment_quantizer(4, 1)


def test_distortion_regressions(inf, three):
    assert inf.distortion([F(1, 2)]) == F(25, 204)
    assert inf.distortion([F(1, 6), F(5, 6)]) == F(7, 612)
    assert inf.distortion([F(1, 6), F(13, 18), F(17, 18)]) == F(29, 5508)
    assert inf.distortion([F(1, 12), F(1, 4), F(13, 18), F(17, 18)]) == F(79, 44064)
    assert three.distortion([F(1, 2)]) == F(119, 972)
    assert three.distortion([F(1, 6), F(5, 6)]) == F(11, 972)


def test_distortion_single_point_parallel_axis(inf, three):
    # E (X - a)^2 = variance + (mean - a)^2 for any a, including points
    # far outside the support
    rng = random.Random(4)
    for dist in (inf, three):
        var, mu = dist.variance(), dist.mean()
        for _ in range(25):
            a = F(rng.randint(-30, 30), rng.randint(1, 17))
            assert dist.distortion([a]) == var + (mu - a) ** 2


def test_distortion_input_validation(inf):
    with pytest.raises(ValueError):
        inf.distortion([])
    with pytest.raises(ValueError):
        inf.distortion([F(1, 2), F(1, 2)])
    with pytest.raises(ValueError):
        inf.distortion([F(2, 3), F(1, 3)])


def test_distortion_uniform_grid():
    u = PiecewiseUniform.uniform()
    for n in (1, 2, 5, 16):
        pts = [F(2 * i - 1, 2 * n) for i in range(1, n + 1)]
        assert u.distortion(pts) == F(1, 12 * n * n)


def test_distortion_points_outside_support(inf, three):
    # an extra point in a gap or beyond the support can only help or do nothing
    base = [F(1, 6), F(5, 6)]
    assert three.distortion([F(1, 6), F(1, 2), F(5, 6)]) <= three.distortion(base)
    assert inf.distortion([F(-3), F(1, 6), F(5, 6)]) == inf.distortion(base)
    assert inf.distortion([F(1, 6), F(5, 6), F(7)]) == inf.distortion(base)


def test_distortion_monotone_in_refinement(inf):
    rng = random.Random(11)
    pts = sorted({F(rng.randint(0, 80), 81) for _ in range(6)})
    for dist in (inf, PiecewiseUniform.three_piece()):
        d_all = dist.distortion(pts)
        d_sub = dist.distortion(pts[:-1])
        assert d_all <= d_sub


def test_config_round_trip(inf, three):
    for dist in (inf, three, PiecewiseUniform.uniform(F(-1, 2), F(3, 2))):
        assert PiecewiseUniform.from_config(dist.to_config()) == dist
    assert three.to_config()["pieces"][0] == {"left": "0/1", "right": "1/3", "density": "3/2"}
    with pytest.raises(ValueError):
        PiecewiseUniform.from_config({"kind": "finite", "pieces": []})
    with pytest.raises(ValueError):
        PiecewiseUniform.from_config({"kind": "nope"})


def test_quantizer_set_validation():
    with pytest.raises(ValueError):
        QuantizerSet((), F(0))
    with pytest.raises(ValueError):
        QuantizerSet((F(1, 2), F(1, 2)), F(0))
    with pytest.raises(ValueError):
        QuantizerSet((F(1, 2),), F(-1))
    q = QuantizerSet((F(1, 4), F(3, 4)), F(1, 48))
    assert q.n == 2 and q.points_float() == [0.25, 0.75]
