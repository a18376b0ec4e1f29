from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from walker.field import SQRT3, QSqrt3, as_exact, is_zero, scalar_to_str, sign, to_float
from walker.polynomial import parse_scalar

from conftest import rationals

qsqrt3 = st.builds(QSqrt3.make, rationals, rationals)


def test_sqrt3_squares_to_three():
    assert SQRT3 * SQRT3 == 3
    assert isinstance(SQRT3 * SQRT3, Fraction)


def test_collapse_to_rational():
    v = QSqrt3.make(2, 0)
    assert v == 2 and not isinstance(v, QSqrt3)


@given(qsqrt3, qsqrt3, qsqrt3)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if not is_zero(b):
        assert (a / b) * b == a


@given(qsqrt3)
def test_sign_matches_float(a):
    f = to_float(a)
    if abs(f) > 1e-9:
        assert sign(a) == (1 if f > 0 else -1)
    assert (sign(a) == 0) == is_zero(a)


@given(qsqrt3)
def test_text_round_trip(a):
    assert parse_scalar(scalar_to_str(a)) == a


def test_as_exact_rejects_float():
    with pytest.raises(TypeError):
        as_exact(0.5)
