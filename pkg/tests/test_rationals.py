"""Exact arithmetic glue: parsing, formatting, powers, comparisons."""

import random
from fractions import Fraction

import pytest

from pwquant import as_float, compare, format_rational, parse_rational, rat_pow, rational


def test_construction_reduces():
    assert rational(6, 8) == Fraction(3, 4)
    assert rational(-6, 8) == Fraction(-3, 4)
    assert rational(5) == Fraction(5, 1)


def test_parse_round_trip():
    for text, expect in [
        ("3/4", Fraction(3, 4)),
        ("-3/4", Fraction(-3, 4)),
        ("+3/4", Fraction(3, 4)),
        ("7", Fraction(7)),
        (" 25/204 ", Fraction(25, 204)),
        ("6/8", Fraction(3, 4)),
    ]:
        assert parse_rational(text) == expect


def test_format_always_shows_denominator():
    assert format_rational(Fraction(1, 2)) == "1/2"
    assert format_rational(Fraction(5)) == "5/1"
    assert format_rational(0) == "0/1"
    assert format_rational(Fraction(-25, 204)) == "-25/204"


@pytest.mark.parametrize("bad", ["", "1.5", "one", "1/0", "3 / 4", "1e-3", "1/2/3"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_pow():
    assert rat_pow(Fraction(2, 3), 3) == Fraction(8, 27)
    assert rat_pow(Fraction(2, 3), -2) == Fraction(9, 4)
    assert rat_pow(Fraction(2, 3), 0) == 1
    with pytest.raises(ZeroDivisionError):
        rat_pow(0, -1)
    with pytest.raises(TypeError):
        rat_pow(Fraction(1, 2), 0.5)


def test_compare_and_float():
    assert compare(Fraction(1, 3), Fraction(1, 2)) == -1
    assert compare(Fraction(1, 2), Fraction(1, 2)) == 0
    assert compare(Fraction(2, 3), Fraction(1, 2)) == 1
    assert as_float(Fraction(1, 4)) == 0.25


def test_exactness_property():
    # field operations stay exact and ordered under random stress
    rng = random.Random(991)
    for _ in range(500):
        a = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        b = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        assert parse_rational(format_rational(a)) == a
        assert (a - b) + b == a
        if b != 0:
            assert (a / b) * b == a
        assert compare(a, b) == -compare(b, a)
