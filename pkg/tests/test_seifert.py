from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tanglesolve.seifert import (
    NONORIENTABLE,
    ORIENTABLE,
    LensSpace,
    LensSum,
    NotLens,
    SeifertData,
    _bezout_complement,
    h1_order,
    lens_equiv,
    lens_of_mobius,
    lens_of_two_fiber,
    normalize_closed,
    parse_lens,
    parse_seifert,
    refiber_mobius_piece,
    torus_knot_de,
    torus_knot_exterior,
)


def closed(*fibers, base=ORIENTABLE):
    return SeifertData(base, 0, fibers)


fiber = st.tuples(st.integers(1, 40), st.integers(-40, 40)).filter(lambda f: gcd(*f) == 1)


def test_normalize_closed_examples():
    assert normalize_closed(closed((2, -1), (3, 2), (1, 2))) == LensSpace(13, 8)
    assert normalize_closed(closed((2, -1), (3, 4), (0, 1))) == LensSum([LensSpace(2, -1), LensSpace(3, 4)])
    assert isinstance(normalize_closed(closed((2, 1), (3, 1), (5, 1))), NotLens)
    with pytest.raises(ValueError):
        normalize_closed(SeifertData(ORIENTABLE, 1, [(2, 1)]))


def test_generalized_fiber_splitting():
    # one (0,1) fiber alone closes up to S^3; each extra one adds S^1 x S^2
    assert normalize_closed(closed((0, 1))) == LensSpace(1, 1)
    assert normalize_closed(closed((3, 1), (0, 1))) == LensSpace(3, 1)
    assert normalize_closed(closed((3, 1), (0, 1), (0, 1))) == LensSum([LensSpace(3, 1), LensSpace(0, 1)])
    assert normalize_closed(closed((3, 1), (0, 1), base=NONORIENTABLE)) == LensSum(
        [LensSpace(3, 1), LensSpace(0, 1)]
    )


def test_lens_of_two_fiber_examples():
    assert lens_of_two_fiber(closed((2, -1), (3, 8))) == LensSpace(13, 8)
    assert lens_of_two_fiber(closed((1, 0), (1, 0))) == LensSpace(0, 1)
    assert lens_of_two_fiber(closed((2, -1), (3, 4))).p == 5
    assert lens_of_two_fiber(closed()) == LensSpace(0, 1)


def test_lens_of_mobius_examples():
    assert lens_of_mobius(closed((3, 1), base=NONORIENTABLE)) == LensSpace(12, 7)
    assert lens_of_mobius(closed((2, -1), base=NONORIENTABLE)) == LensSpace(8, 3)
    assert isinstance(lens_of_mobius(closed((3, 2), base=NONORIENTABLE)), NotLens)
    assert normalize_closed(closed((1, 0), base=NONORIENTABLE)) == LensSum([LensSpace(2, 1)] * 2)


@given(st.integers(1, 60), st.sampled_from([1, -1]))
def test_mobius_identity_and_order(alpha, eps):
    m = closed((alpha, eps), base=NONORIENTABLE)
    lens = normalize_closed(m)
    assert lens == LensSpace(4 * alpha, eps - 2 * alpha)
    assert lens.p == h1_order(m)
    # a unit fiber shifts beta by a multiple of alpha, leaving the lens range
    assert isinstance(normalize_closed(closed((alpha, eps), (1, 3), base=NONORIENTABLE)), NotLens)


def test_refiber():
    assert refiber_mobius_piece() == SeifertData(ORIENTABLE, 1, [(2, 1), (2, -1)])
    with pytest.raises(ValueError):
        refiber_mobius_piece(SeifertData(ORIENTABLE, 1, [(2, 1)]))


def test_h1_examples():
    assert h1_order(closed((2, 1), (3, 1), (5, 1))) == 31
    assert h1_order(closed((2, -1), (3, 8))) == 13
    assert h1_order(closed((1, 0), (1, 0))) == 0
    with pytest.raises(ValueError):
        h1_order(closed((0, 1), (2, 1)))


@given(fiber, fiber)
def test_determinant_matches_h1(f1, f2):
    m = closed(f1, f2)
    assert lens_of_two_fiber(m).p == h1_order(m)


@given(fiber, fiber, st.integers(-5, 5))
def test_choice_and_swap_invariance(f1, f2, k):
    (a1, b1), (a2, b2) = f1, f2
    x, y = _bezout_complement(a2, b2)
    x, y = x + k * a2, y + k * b2
    assert a2 * y - x * b2 == 1
    shifted = LensSpace(a1 * b2 + a2 * b1, -(a1 * y + x * b1))
    base = lens_of_two_fiber(closed(f1, f2))
    assert lens_equiv(shifted, base, "oriented")
    assert lens_equiv(lens_of_two_fiber(closed(f2, f1)), base, "oriented")


@given(fiber, fiber, st.integers(-6, 6))
def test_absorption_target_irrelevant(f1, f2, u):
    # a unit fiber (1,u) merged into either exceptional fiber gives the same space
    (a1, b1), (a2, b2) = f1, f2
    into_first = lens_of_two_fiber(closed((a1, b1 + u * a1), f2))
    into_second = lens_of_two_fiber(closed(f1, (a2, b2 + u * a2)))
    assert into_first == into_second == normalize_closed(closed(f1, f2, (1, u)))


def test_torus_knot_examples():
    assert torus_knot_de(2, 1) == (1, 1)
    assert torus_knot_de(2, 5) == (3, 1)
    assert torus_knot_exterior(5, 1, 2, 1) == SeifertData(ORIENTABLE, 1, [(2, -1), (3, 4)])
    assert torus_knot_exterior(1, 1, 2, 5) == SeifertData(ORIENTABLE, 1, [(2, -1), (3, 2)])
    # p = 1 has no exceptional fiber from the knot
    assert torus_knot_exterior(5, 2, 1, 3).fibers[0] == (1, 0)
    with pytest.raises(ValueError):
        torus_knot_exterior(5, 1, 0, 1)


def test_exterior_closes_up():
    count = 0
    for a in range(1, 9):
        for b in range(1, a + 1):
            if gcd(a, b) != 1:
                continue
            for p in range(2, 6):
                for q in range(-7, 8):
                    if gcd(p, q) != 1:
                        continue
                    d, e = torus_knot_de(p, q)
                    assert p * d - q * e == 1 and 0 <= e < p
                    m = torus_knot_exterior(a, b, p, q).with_fiber(1, 0)
                    assert lens_equiv(normalize_closed(m), LensSpace(a, b), "oriented"), (a, b, p, q)
                    count += 1
    assert count > 800


def test_lens_equiv_examples():
    assert lens_equiv(LensSpace(13, 8), LensSpace(13, 5))
    assert lens_equiv(LensSpace(11, 8), LensSpace(11, 7))
    assert not lens_equiv(LensSpace(3, 1), LensSpace(3, 2))
    assert lens_equiv(LensSpace(3, 1), LensSpace(3, 2), "unoriented")
    assert LensSpace(-13, -8) == LensSpace(13, 5)


def test_text_forms():
    m = parse_seifert("M(0,0;(2,-1),(3,2))")
    assert m == closed((2, -1), (3, 2))
    assert str(m) == "M(0,0;(2,-1),(3,2))"
    assert parse_seifert("M(-1,1;)") == SeifertData(NONORIENTABLE, 1)
    assert parse_lens("L(13,8)") == LensSpace(13, 5)
    with pytest.raises(ValueError):
        parse_seifert("M(0,0;(2,-1) junk)")
    with pytest.raises(ValueError):
        SeifertData(ORIENTABLE, 0, [(4, 2)])
