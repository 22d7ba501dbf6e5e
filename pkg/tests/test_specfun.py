"""
Tests for the exponential-integral kernel
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings
from hypothesis import strategies as st

from app.core.exceptions import DomainError, EiOverflowError
from app.services import specfun
from app.services.specfun import EULER_GAMMA, ei, ei_diff_scaled, scaled_ei_neg

EI_MINUS_ONE = -0.21938393439552
EI_ONE = 1.89511781635594
EI_TWO = 4.95423435600189


class TestEi:
    def test_reference_values(self):
        assert ei(-1.0) == pytest.approx(EI_MINUS_ONE, abs=1e-12)
        assert ei(1.0) == pytest.approx(EI_ONE, rel=1e-12)
        assert ei(2.0) == pytest.approx(EI_TWO, rel=1e-12)

    def test_small_negative_argument(self):
        eps = 1e-10
        assert ei(-eps) == pytest.approx(EULER_GAMMA + math.log(eps) - eps, rel=1e-12)
        assert ei(-eps) == pytest.approx(-22.4486352, abs=1e-6)

    @pytest.mark.parametrize("x", [-40.0, -5.0, -0.3, 0.5, 3.0, 20.0, 100.0])
    def test_matches_quadrature(self, x):
        assert ei(x) == pytest.approx(ei(x, quadrature=True), rel=1e-9)

    def test_zero_is_a_domain_error(self):
        with pytest.raises(DomainError):
            ei(0.0)

    def test_overflow(self):
        assert math.isfinite(ei(700.0))
        with pytest.raises(EiOverflowError):
            ei(710.0)

    def test_negative_regimes_agree_across_crossover(self):
        for x in np.geomspace(0.3, 3.0, 25):
            series = specfun._ei_series(-x)
            fraction = -specfun._e1_scaled_continued_fraction(x) * math.exp(-x)
            assert series == pytest.approx(fraction, rel=1e-11)

    def test_positive_regimes_agree_across_crossover(self):
        for x in np.geomspace(30.0, 300.0, 25):
            series = specfun._ei_series(x) * math.exp(-x)
            asymptotic = specfun._ei_scaled_asymptotic(x)
            assert series == pytest.approx(asymptotic, rel=1e-11)

    @given(st.floats(min_value=-8.0, max_value=2.8))
    def test_finite_over_log_grid(self, exponent):
        for sign in (-1.0, 1.0):
            assert math.isfinite(ei(sign * 10.0 ** exponent))


class TestScaledEiNeg:
    def test_reference_value(self):
        assert scaled_ei_neg(1.0) == pytest.approx(math.e * EI_MINUS_ONE, rel=1e-10)
        assert scaled_ei_neg(1.0) == pytest.approx(-0.596347, abs=1e-6)

    def test_large_argument_follows_asymptotic_series(self):
        x = 1e3
        expected = -1 / x + 1 / x ** 2 - 2 / x ** 3 + 6 / x ** 4 - 24 / x ** 5
        assert scaled_ei_neg(x) == pytest.approx(expected, rel=1e-9)

    def test_never_overflows(self):
        for x in (1e-8, 1e3, 1e8, 1e300):
            value = scaled_ei_neg(x)
            assert math.isfinite(value)
            assert value < 0

    @pytest.mark.parametrize("x", [1e-6, 0.1, 1.0, 3.0, 10.0, 1e3])
    def test_matches_quadrature(self, x):
        assert scaled_ei_neg(x) == pytest.approx(scaled_ei_neg(x, quadrature=True), rel=1e-9)

    @pytest.mark.parametrize("x", [0.0, -1.0, math.inf, math.nan])
    def test_rejects_non_positive(self, x):
        with pytest.raises(DomainError):
            scaled_ei_neg(x)

    @given(st.floats(min_value=-8.0, max_value=3.0))
    def test_negative_and_finite(self, exponent):
        value = scaled_ei_neg(10.0 ** exponent)
        assert math.isfinite(value)
        assert value < 0


class TestEiDiffScaled:
    def test_reference_value(self):
        assert ei_diff_scaled(1.0, 2.0) == pytest.approx(math.exp(-1.0) * (EI_TWO - EI_ONE), rel=1e-9)

    def test_equal_arguments(self):
        assert ei_diff_scaled(3.0, 3.0) == 0.0

    def test_large_positive_arguments_stay_finite(self):
        value = ei_diff_scaled(800.0, 801.0)
        assert math.isfinite(value)
        assert value == pytest.approx(ei_diff_scaled(800.0, 801.0, quadrature=True), rel=1e-9)

    @pytest.mark.parametrize("a,b", [(1.0, 2.0), (0.5, 0.9), (50.0, 55.0), (-3.0, -1.0), (-40.0, -2.0), (2.0, 1.5)])
    def test_antisymmetry(self, a, b):
        forward = ei_diff_scaled(a, b)
        backward = ei_diff_scaled(b, a)
        assert forward + math.exp(b - a) * backward == pytest.approx(0.0, abs=1e-9 * max(1.0, abs(forward)))

    @pytest.mark.parametrize("a,b", [(1.0, 2.0), (-3.0, -1.0), (500.0, 510.0), (3.0, 45.0), (-2.0, -40.0)])
    def test_matches_quadrature(self, a, b):
        assert ei_diff_scaled(a, b) == pytest.approx(ei_diff_scaled(a, b, quadrature=True), rel=1e-9)

    @pytest.mark.parametrize("a,b", [(0.0, 1.0), (-1.0, 1.0), (2.0, -2.0)])
    def test_requires_same_sign(self, a, b):
        with pytest.raises(DomainError):
            ei_diff_scaled(a, b)

    def test_overflowing_span(self):
        with pytest.raises(EiOverflowError):
            ei_diff_scaled(1.0, 800.0)

    @hyp_settings(max_examples=50)
    @given(st.floats(min_value=1e-3, max_value=300.0), st.floats(min_value=1e-3, max_value=30.0))
    def test_positive_for_increasing_positive_arguments(self, a, span):
        assert ei_diff_scaled(a, a + span) > 0
