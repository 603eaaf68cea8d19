from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from oracles import gcd_by_enumeration
from xkraw.errors import AllZero, NonvanishingPole, WindowOverflow
from xkraw.exactnum import (
    EPS,
    LaurentSeries,
    PiMultiple,
    is_integer_multiple,
    laurent_constant_term,
    rational_gcd,
)

rationals = st.fractions(max_denominator=10**6).filter(lambda v: abs(v) < 10**9)
small = st.fractions(min_value=-50, max_value=50, max_denominator=50)


class TestConstantTerm:
    def test_constant_extraction(self):
        assert laurent_constant_term(3 + 5 * EPS) == 3

    def test_pole_zero_cancellation(self):
        assert laurent_constant_term((1 / EPS) * (2 * EPS)) == 2

    def test_divergent(self):
        with pytest.raises(NonvanishingPole):
            laurent_constant_term(1 / EPS + 1)

    def test_plain_rational_passthrough(self):
        assert laurent_constant_term(F(3, 4)) == F(3, 4)

    def test_truncation_is_tracked(self):
        # eps/(1 + eps) - eps = -eps^2 + eps^3 - ..., but the eps^3 part falls
        # off the window, so dividing by it leaves nothing exact at eps^0.
        y = EPS / (1 + EPS) - EPS
        assert y[2] == -1 and y.prec == 2
        w = 1 / y
        assert w.prec == -2
        with pytest.raises(WindowOverflow):
            laurent_constant_term(LaurentSeries({0: 3}, prec=-1))

    def test_double_pole_rejected_as_divisor(self):
        with pytest.raises(WindowOverflow):
            F(1) / (EPS.inverse() * EPS.inverse())

    def test_product_below_window(self):
        with pytest.raises(WindowOverflow):
            EPS.inverse() * EPS.inverse() * EPS.inverse()


class TestLaurentArithmetic:
    def test_inverse_of_shifted_value(self):
        # 1/(2 + eps) = 1/2 - eps/4 + eps^2/8 - ...
        s = 1 / (2 + EPS)
        assert (s[0], s[1], s[2]) == (F(1, 2), F(-1, 4), F(1, 8))

    def test_pochhammer_style_pole(self):
        # (-(N + eps)) (-(N + eps) + N) = (N + eps) eps: simple zero, so its
        # inverse has a simple pole with residue 1/N
        N = 5
        s = (-(N + EPS)) * (-(N + EPS) + N)
        assert s.low == 1
        assert (1 / s)[-1] == F(1, N)

    @given(st.lists(small, min_size=5, max_size=5), st.lists(small, min_size=5, max_size=5),
           st.integers(-1, 0), st.integers(-1, 0))
    def test_constant_term_matches_convolution(self, a, b, sa, sb):
        # u, v carry at most simple poles; window [-2, 2] keeps eps^0 exact
        u = LaurentSeries({k + sa: c for k, c in enumerate(a) if k + sa <= 2})
        v = LaurentSeries({k + sb: c for k, c in enumerate(b) if k + sb <= 2})
        expected = sum((u[i] * v[-i] for i in range(-2, 3)), F(0))
        assert (u * v)[0] == expected

    @given(small, small, small)
    def test_ring_axioms_on_series(self, a, b, c):
        u, v, w = a + EPS, b - 2 * EPS, c + EPS * EPS
        assert (u + v) + w == u + (v + w)
        assert u * (v + w) == u * v + u * w


@given(rationals, rationals, rationals)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if b:
        assert (a / b) * b == a
    assert (a - b).denominator > 0


class TestRationalGcd:
    def test_sevenths(self):
        vals = [F(4, 7), F(2, 7), F(1)]
        assert gcd_by_enumeration(vals) == F(1, 7)
        assert rational_gcd(vals) == F(1, 7)

    def test_with_zero(self):
        assert rational_gcd([0, 5]) == 5

    def test_gap_set_quarter(self):
        vals = [F(28), F(110, 7), F(8), F(26, 7), F(12, 7), F(6, 7)]
        assert gcd_by_enumeration(vals) == F(2, 7)
        g = rational_gcd(vals)
        assert g == F(2, 7)
        assert PiMultiple(2 / g) == PiMultiple(7)

    def test_all_zero(self):
        with pytest.raises(AllZero):
            rational_gcd([0, F(0)])

    @settings(deadline=None)
    @given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=12),
                    min_size=1, max_size=6).filter(lambda v: any(v)))
    def test_divides_and_is_maximal(self, vals):
        g = rational_gcd(vals)
        assert g > 0
        assert all(is_integer_multiple(v, g) for v in vals)
        assert not all(is_integer_multiple(v, 2 * g) for v in vals)
        assert g == gcd_by_enumeration(vals)


class TestPiMultiple:
    @pytest.mark.parametrize("text, coef", [
        ("7pi", F(7)), ("7/2pi", F(7, 2)), ("-3/4 pi", F(-3, 4)), ("pi", F(1)), ("0pi", F(0)),
    ])
    def test_parse(self, text, coef):
        assert PiMultiple.parse(text).coef == coef

    def test_float(self):
        assert float(PiMultiple(F(21, 2))) == pytest.approx(10.5 * 3.141592653589793, rel=1e-16)

    def test_rejects_garbage(self):
        with pytest.raises(ValueError):
            PiMultiple.parse("7 tau")
