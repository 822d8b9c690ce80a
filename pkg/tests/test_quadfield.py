import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lamcoh import QuadReal, golden_rotation

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=12)


@st.composite
def quadreals(draw, d=5):
    return QuadReal(draw(rationals), draw(rationals), d)


def test_basic_arithmetic():
    x = QuadReal(Fraction(1, 2), Fraction(1, 3))
    y = QuadReal(Fraction(1, 4), Fraction(-1, 3))
    assert (x + y) == QuadReal(Fraction(3, 4), 0)
    assert (x - x).is_zero()
    z = x * y
    # (1/2 + s/3)(1/4 - s/3) with s^2 = 5: 1/8 - 5/9 + s(1/12 - 1/6)
    assert z == QuadReal(Fraction(1, 8) - Fraction(5, 9), Fraction(-1, 12))


def test_golden_rotation_value():
    g = golden_rotation()
    assert g.sign() == 1
    assert (g * (g + 1)).a == 1 and (g * (g + 1)).b == 0  # g^2 + g = 1
    assert abs(float(g) - (math.sqrt(5) - 1) / 2) < 1e-12


def test_rational_embedding_mixes_fields():
    x = QuadReal(Fraction(1, 2), 0, d=5)
    y = QuadReal(0, Fraction(1, 3), d=3)
    assert (x + y).d == 3
    with pytest.raises(ValueError):
        QuadReal(0, 1, 5) + QuadReal(0, 1, 3)


def test_square_free_enforced():
    with pytest.raises(ValueError):
        QuadReal(0, 1, 4)
    with pytest.raises(ValueError):
        QuadReal(0, 1, 12)
    with pytest.raises(ValueError):
        QuadReal(0, 1, -5)


@given(quadreals())
@settings(max_examples=120)
def test_sign_matches_float(x):
    f = float(x)
    if abs(f) > 1e-9:
        assert x.sign() == (1 if f > 0 else -1)


@given(quadreals(), quadreals())
@settings(max_examples=120)
def test_order_total_and_consistent(x, y):
    assert (x < y) + (y < x) + (x == y) == 1
    if x < y:
        assert float(x) <= float(y) + 1e-9


@given(quadreals())
@settings(max_examples=120)
def test_floor_bracket(x):
    n = x.floor()
    assert (x - n).sign() >= 0
    assert (x - (n + 1)).sign() < 0
    m = x.mod1()
    assert m.sign() >= 0 and (m - 1).sign() < 0


def test_exact_comparison_near_ties():
    # sqrt(5) vs rational approximations: 161/72 < sqrt(5) < 682/305
    s = QuadReal(0, 1)
    assert QuadReal(Fraction(161, 72)) < s
    assert s < QuadReal(Fraction(682, 305))


def test_serialization_roundtrip():
    x = QuadReal(Fraction(-1, 2), Fraction(1, 2), 5)
    assert QuadReal.from_dict(x.to_dict()) == x
    assert x.to_dict() == {"a": "-1/2", "b": "1/2", "d": 5}
