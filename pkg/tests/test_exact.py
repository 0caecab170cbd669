from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tanglesolve.exact import (
    INF,
    ZERO,
    ExtRational,
    NoInverse,
    UndefinedFraction,
    cf_eval,
    cf_expand,
    mod_inverse,
    parse_fraction,
    reduce,
)

nonzero = st.integers(-10**6, 10**6).filter(bool)


def test_reduce_examples():
    assert reduce(26, 8) == ExtRational(13, 4)
    assert reduce(-3, -6) == ExtRational(1, 2)
    assert reduce(5, 0) == INF
    assert reduce(-5, 0) == INF
    with pytest.raises(UndefinedFraction):
        reduce(0, 0)


@given(st.integers(-500, 500), nonzero, nonzero)
def test_reduce_scaling(p, q, k):
    assert reduce(k * p, k * q) == reduce(p, q)
    x = reduce(p, q)
    assert reduce(x.num, x.den) == x


@given(st.integers(-500, 500), nonzero, st.integers(-500, 500), nonzero)
def test_addition_matches_fractions(a, b, c, d):
    got = ExtRational(a, b) + ExtRational(c, d)
    want = Fraction(a, b) + Fraction(c, d)
    assert (got.num, got.den) == (want.numerator, want.denominator)


def test_infinity_arithmetic():
    assert INF + 3 == INF
    assert ZERO.reciprocal() == INF
    assert INF.reciprocal() == ZERO
    assert -INF == INF
    with pytest.raises(UndefinedFraction):
        INF + INF


def test_mod_inverse_examples():
    assert mod_inverse(5, 13) == 8
    assert mod_inverse(-5, 13) == 5
    with pytest.raises(NoInverse):
        mod_inverse(4, 8)
    with pytest.raises(ValueError):
        mod_inverse(1, 1)


@given(st.integers(2, 10**4), st.integers(-10**6, 10**6))
def test_mod_inverse_involution(m, x):
    try:
        y = mod_inverse(x, m)
    except NoInverse:
        return
    assert (x * y) % m == 1
    assert mod_inverse(y, m) == x % m


def test_cf_examples():
    assert cf_eval((4, 3)) == ExtRational(13, 4)
    assert cf_eval(()) == INF
    assert cf_eval((0, 0)) == INF
    assert cf_expand(ExtRational(13, 4)) == (4, 3)
    assert cf_expand(ExtRational(9, 7)) == (1, 1, 3, 1)
    assert cf_expand(ExtRational(-9, 7)) == (-1, -1, -3, -1)
    assert cf_expand(ExtRational(1, 5)) == (5, 0)
    with pytest.raises(ValueError):
        cf_expand(ZERO)
    with pytest.raises(ValueError):
        cf_expand(INF)


@given(st.integers(1, 500), st.integers(-500, 500).filter(bool))
def test_cf_round_trip(alpha, beta):
    f = ExtRational(beta, alpha)
    c = cf_expand(f)
    assert len(c) % 2 == 0
    assert cf_eval(c) == f
    assert all(x * f.num >= 0 for x in c)


def test_parse_fraction():
    assert parse_fraction("13/4") == ExtRational(13, 4)
    assert parse_fraction(" -26/8 ") == ExtRational(-13, 4)
    assert parse_fraction("inf") == INF
    assert parse_fraction("7") == ExtRational(7)
    with pytest.raises(ValueError):
        parse_fraction("1/x")
    with pytest.raises(UndefinedFraction):
        parse_fraction("0/0")
