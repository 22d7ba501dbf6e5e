"""
Tests for the average-intensity bounds
"""

import math
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.core.exceptions import DomainError
from app.models.bounds import AvgConstraint, BranchFlag
from app.models.channel import NoiseParams
from app.services.bounds_avg import (
    asymptotic_bounds_avg,
    expected_log_ratio_exponential,
    f_low,
    lower_bound_avg,
    lower_bound_avg_si,
    secrecy_bounds_avg,
    secrecy_bounds_avg_si,
    upper_bound_avg,
    upper_bound_avg_si,
)
from app.services.channel import make_channel, reference_channel
from app.utils.helpers import db_to_watts

HIGH_INTENSITY_GAP = 0.5 * math.log(8.0 / math.pi)


class TestFLow:
    def test_tends_to_log_gain(self, noise):
        assert f_low(1.0, 1e12, noise) == pytest.approx(0.0, abs=1e-9)
        assert f_low(0.5, 1e12, noise) == pytest.approx(math.log(0.5), abs=1e-9)

    @given(st.floats(min_value=1e-6, max_value=1e8), st.floats(min_value=1.001, max_value=100.0))
    def test_decreasing(self, xiP, factor):
        noise = NoiseParams(sigma2=1.0, varsigma2=1.5)
        assert f_low(1.0, xiP * factor, noise) <= f_low(1.0, xiP, noise) + 1e-12

    def test_domain(self, noise):
        with pytest.raises(DomainError):
            f_low(1.0, 0.0, noise)


class TestLowerBound:
    def test_expectation_term_sign(self, channel_10):
        # Eve's gain is smaller, so the log ratio is negative
        assert expected_log_ratio_exponential(channel_10, 3.0) < 0

    def test_converges_to_high_intensity_limit(self):
        for ratio in (10.0, 100.0, 1000.0):
            ch = reference_channel(ratio)
            limits = asymptotic_bounds_avg(ch)
            value = lower_bound_avg(ch, AvgConstraint(xi=0.3, P=db_to_watts(100.0)))
            assert abs(value - limits.lower_inf) < 1e-3

    @pytest.mark.parametrize("P", [3.0, 10.0, 100.0])
    def test_signal_independent_limit(self, P):
        tiny = NoiseParams(sigma2=1.0, varsigma2=1e-8)
        ch = make_channel(1.0, 0.1, tiny, tiny)
        con = AvgConstraint(xi=0.3, P=P)
        assert lower_bound_avg(ch, con) == pytest.approx(lower_bound_avg_si(ch, con), rel=1e-3)

    def test_blind_eavesdropper_needs_oracle(self, noise):
        ch = make_channel(1.0, 0.0, noise, noise)
        with pytest.raises(DomainError):
            lower_bound_avg(ch, AvgConstraint(xi=0.3, P=1.0))


class TestUpperBound:
    def test_high_intensity_branch(self, channel_1000):
        value, branch = upper_bound_avg(channel_1000, AvgConstraint(xi=0.3, P=db_to_watts(100.0)))
        assert branch is BranchFlag.COND_FAILS
        assert value == pytest.approx(asymptotic_bounds_avg(channel_1000).upper_inf, abs=1e-12)

    @pytest.mark.parametrize("ratio,switch_db", [(2.0, 2.3), (10.0, 12.3), (1000.0, 34.7)])
    def test_branch_switches_once(self, ratio, switch_db):
        ch = reference_channel(ratio)
        branches = [
            upper_bound_avg(ch, AvgConstraint(xi=0.3, P=db_to_watts(P_db / 10.0)))[1]
            for P_db in range(-200, 1001, 5)
        ]
        switches = [k for k in range(1, len(branches)) if branches[k] is not branches[k - 1]]
        assert len(switches) == 1
        assert branches[0] is BranchFlag.COND_HOLDS
        assert branches[-1] is BranchFlag.COND_FAILS
        assert (-200 + 5 * switches[0]) / 10.0 == pytest.approx(switch_db, abs=0.6)

    @pytest.mark.parametrize("P", [3.0, 10.0, 100.0])
    def test_vanishing_dependent_noise_keeps_high_intensity_value(self, P):
        # the signal-dependent form does not reduce to the signal-independent one
        tiny = NoiseParams(sigma2=1.0, varsigma2=1e-8)
        ch = make_channel(1.0, 0.1, tiny, tiny)
        con = AvgConstraint(xi=0.3, P=P)
        value, branch = upper_bound_avg(ch, con)
        assert branch is BranchFlag.COND_FAILS
        assert value == pytest.approx(0.5 * math.log(4.0 * math.e * 10.0 / math.pi ** 2), rel=1e-9)
        assert value == pytest.approx(1.1997, abs=1e-4)
        assert abs(value - upper_bound_avg_si(ch, con)[0]) > 0.3

    def test_signal_independent_values(self):
        tiny = NoiseParams(sigma2=1.0, varsigma2=1e-8)
        ch = make_channel(1.0, 0.1, tiny, tiny)
        low, low_branch = upper_bound_avg_si(ch, AvgConstraint(xi=0.3, P=3.0))
        high, high_branch = upper_bound_avg_si(ch, AvgConstraint(xi=0.3, P=100.0))
        assert low == pytest.approx(0.7986, abs=1e-4) and low_branch is BranchFlag.COND_HOLDS
        assert high == pytest.approx(2.351, abs=1e-3) and high_branch is BranchFlag.COND_FAILS

    def test_signal_independent_high_intensity_branch(self, channel_10):
        value, branch = upper_bound_avg_si(channel_10, AvgConstraint(xi=0.3, P=db_to_watts(100.0)))
        assert branch is BranchFlag.COND_FAILS
        assert value == pytest.approx(math.log(2.0 * math.sqrt(math.e) * 10.0 / math.pi), rel=1e-12)


class TestAsymptotics:
    @pytest.mark.parametrize("ratio", [2.0, 10.0, 1000.0])
    def test_gap_is_universal(self, ratio):
        limits = asymptotic_bounds_avg(reference_channel(ratio))
        assert limits.gap == pytest.approx(HIGH_INTENSITY_GAP, abs=1e-12)
        assert limits.upper_inf - limits.lower_inf == pytest.approx(HIGH_INTENSITY_GAP, abs=1e-12)
        assert limits.gap == pytest.approx(0.4674, abs=5e-5)

    def test_plateau_above_85_db(self):
        for ratio in (10.0, 100.0, 1000.0):
            ch = reference_channel(ratio)
            previous = None
            for P_db in (85.0, 90.0, 95.0, 100.0):
                bounds = secrecy_bounds_avg(ch, AvgConstraint(xi=0.3, P=db_to_watts(P_db)))
                if previous is not None:
                    assert abs(bounds.lower_raw - previous.lower_raw) < 1e-4
                    assert abs(bounds.upper_raw - previous.upper_raw) < 1e-4
                previous = bounds


class TestSecrecyBounds:
    def test_clamped_ordering_over_grid(self):
        for ratio, varsigma2, xi in product((2.0, 10.0, 100.0, 1000.0), (0.5, 1.5, 3.0), (0.1, 0.5, 1.0)):
            ch = reference_channel(ratio, varsigma2=varsigma2)
            for P_db in range(-20, 101, 10):
                bounds = secrecy_bounds_avg(ch, AvgConstraint(xi=xi, P=db_to_watts(P_db)))
                assert bounds.lower <= bounds.upper + 1e-9
                assert bounds.lower >= 0 and bounds.upper >= 0

    def test_non_decreasing_in_gain_ratio(self):
        ratios = (2.0, 10.0, 100.0, 1000.0)
        for varsigma2, xi in product((0.5, 1.5, 3.0), (0.1, 0.5, 1.0)):
            for P_db in range(-20, 101, 10):
                con = AvgConstraint(xi=xi, P=db_to_watts(P_db))
                rows = [secrecy_bounds_avg(reference_channel(r, varsigma2=varsigma2), con) for r in ratios]
                for before, after in zip(rows, rows[1:]):
                    assert after.lower_raw >= before.lower_raw - 1e-9
                    assert after.upper_raw >= before.upper_raw - 1e-9

    def test_gap_definition(self, channel_10):
        bounds = secrecy_bounds_avg(channel_10, AvgConstraint(xi=0.3, P=10.0))
        assert bounds.gap == pytest.approx(bounds.upper_raw - bounds.lower_raw)
        assert bounds.branch_upper is not None

    @pytest.mark.parametrize("ratio", [0.1, 0.5, 1.0])
    def test_zero_when_eavesdropper_dominates(self, ratio):
        ch = reference_channel(ratio)
        for P_db in (-20.0, 20.0, 60.0, 100.0):
            bounds = secrecy_bounds_avg(ch, AvgConstraint(xi=0.3, P=db_to_watts(P_db)))
            assert bounds.eavesdropper_dominates
            assert bounds.lower == 0.0 and bounds.upper == 0.0
            assert bounds.branch_upper is None
            assert bounds.upper_raw == upper_bound_avg(ch, AvgConstraint(xi=0.3, P=db_to_watts(P_db)))[0]

    def test_signal_independent_assembly(self, channel_10):
        bounds = secrecy_bounds_avg_si(channel_10, AvgConstraint(xi=0.3, P=10.0))
        assert bounds.lower <= bounds.upper + 1e-9
        assert not bounds.eavesdropper_dominates
