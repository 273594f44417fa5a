import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdw_tiling.closed_form import ClosedForm, Surd, cos_pi, sin_pi, sqrt1m

PROPS = settings(max_examples=1000, deadline=None)

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=30)
rads = st.integers(1, 200)


def test_normalisation_and_printing():
    assert Surd(1, 8) == Surd(2, 2)
    assert str(Surd.sqrt(Fraction(8, 9))) == "2*sqrt(2)/3"
    assert str(Surd(-1, 1) / (2 * Surd.sqrt(7))) == "-1/(2*sqrt(7))"
    assert str(Surd(5) / (2 * Surd.sqrt(7))) == "5/(2*sqrt(7))"
    assert str(Surd(Fraction(13, 14))) == "13/14"
    assert str(ClosedForm.arccos(Fraction(1, 3))) == "acos(1/3)"
    assert str(ClosedForm.pi(Fraction(4, 3))) == "4*pi/3"
    assert str(ClosedForm.pi(Fraction(1, 3))) == "pi/3"


def test_adding_unlike_radicands_fails():
    with pytest.raises(ValueError):
        Surd.sqrt(2) + Surd.sqrt(3)


def test_exact_trig():
    assert cos_pi(Fraction(2, 3)) == Surd(Fraction(-1, 2))
    assert sin_pi(Fraction(1, 3)) == Surd(Fraction(1, 2), 3)
    assert cos_pi(Fraction(1, 7)) is None
    assert sqrt1m(Surd(Fraction(1, 3))) == Surd(Fraction(2, 3), 2)


@PROPS
@given(fracs, rads, fracs, rads)
def test_surd_arithmetic_matches_floats(p, r, q, s):
    x, y = Surd(p, r), Surd(q, s)
    assert float(x * y) == pytest.approx(float(x) * float(y), rel=1e-12, abs=1e-12)
    assert (x * y).square() == x.square() * y.square()
    if y.coef != 0:
        assert float(x / y) == pytest.approx(float(x) / float(y), rel=1e-12, abs=1e-12)
    if x.rad == y.rad or x.coef == 0 or y.coef == 0:
        assert float(x + y) == pytest.approx(float(x) + float(y), rel=1e-12, abs=1e-12)
    assert x.sign() == (float(x) > 0) - (float(x) < 0)


@PROPS
@given(st.fractions(min_value=-4, max_value=4, max_denominator=12))
def test_cos_pi_exact_where_defined(q):
    c = cos_pi(q)
    if c is not None:
        assert float(c) == pytest.approx(math.cos(float(q) * math.pi), abs=1e-12)
        assert ClosedForm.pi(q).cos == c
