""" Tests for the scaling functions H, h, r and the almost-sure normings. """

import math

import ddt
import numpy as np
from pytest import approx

from branching_extremes.apps.scaling.constants import NormingKinds
from branching_extremes.apps.scaling.data import SlowVariationSpec, exponential, h_multiple
from branching_extremes.apps.scaling.exceptions import InversionError
from branching_extremes.apps.scaling.norming import (
    ScalingContext,
    as_norming,
    big_h,
    big_h_log,
    h_of_t,
    r_of_t
)
from test_utils import NumericsTestCase

UNIT = SlowVariationSpec.constant()
LOG_GRID = np.logspace(-12, 3, 61)


@ddt.ddt
class BigHTests(NumericsTestCase):
    """ H inverts x^{-alpha} L(x). """

    def test_power_inverse(self):
        assert big_h(UNIT, 0.5, 4.0) == approx(1.0 / 16.0, rel=1e-12)
        assert big_h(UNIT, 1.5, math.exp(-3.0)) == approx(math.exp(2.0), rel=1e-12)

    @ddt.data((UNIT, 1.5), (SlowVariationSpec.log_power(1.0), 1.0), (SlowVariationSpec.log_power(-1.0), 1.5),
              (SlowVariationSpec.constant(2.5), 0.8), (SlowVariationSpec.log_power(1.0), 1.5))
    @ddt.unpack
    def test_inversion_residual(self, spec, alpha):
        spec.validate_for(alpha)
        for y in LOG_GRID:
            x = big_h(spec, alpha, y)
            assert abs(x ** -alpha * spec(x) - y) <= 1e-10 * y

    @ddt.data(1e-6, 1e-3, 1.0)
    def test_log_power_self_check(self, y):
        spec = SlowVariationSpec.log_power(1.0)
        x = big_h(spec, 1.0, y)
        assert abs(math.log(math.e + x) / x - y) < 1e-10 * y

    @ddt.data(UNIT, SlowVariationSpec.log_power(2.0))
    def test_strictly_decreasing(self, spec):
        values = [big_h(spec, 1.5, y) for y in LOG_GRID]
        assert np.all(np.diff(values) < 0.0)

    @ddt.data(2.0, 10.0)
    def test_bar_l_is_slowly_varying(self, c):
        spec = SlowVariationSpec.log_power(2.0)
        ratios = []
        for y in (1e-4, 1e-40, 1e-200):
            log_y = math.log(y)
            ratio_log = (big_h_log(spec, 1.5, log_y + math.log(c)) + (log_y + math.log(c)) / 1.5
                         - big_h_log(spec, 1.5, log_y) - log_y / 1.5)
            ratios.append(abs(ratio_log))
        assert ratios[0] > ratios[1] > ratios[2]
        assert ratios[2] < 1e-2

    def test_domain(self):
        with self.assertRaises(InversionError):
            big_h(UNIT, 1.5, 0.0)


@ddt.ddt
class HAndRTests(NumericsTestCase):
    """ h(t) and r(t). """

    @ddt.data(0.0, 1.0, 9.0, 25.0)
    def test_unit_closed_form(self, t):
        assert h_of_t(UNIT, 1.5, 1.0, t) == approx(math.exp(t / 1.5), rel=1e-12)

    def test_h_strictly_increasing(self):
        spec = SlowVariationSpec.log_power(1.0)
        values = [h_of_t(spec, 1.0, 0.7, t) for t in np.linspace(0.0, 30.0, 31)]
        assert np.all(np.diff(values) > 0.0)

    def test_log_power_asymptote(self):
        spec, alpha, lam = SlowVariationSpec.log_power(1.0), 1.5, 1.0
        gaps = []
        for t in (10.0, 100.0, 1000.0):
            scale = lam * t / alpha
            gaps.append(abs(big_h_log(spec, alpha, -lam * t) - scale - math.log(scale) / alpha))
        assert gaps[0] > gaps[1] > gaps[2]

    @ddt.data(0.5, 1.0, 2.0)
    def test_exponential_threshold_gives_linear_r(self, c):
        for t in (1.0, 6.0, 10.0):
            assert r_of_t(UNIT, 1.5, 1.0, exponential(c), t) == approx(c * t, rel=1e-12)

    def test_h_threshold_gives_identity(self):
        scaling = ScalingContext(spec=SlowVariationSpec.log_power(1.0), alpha=1.2, lam=0.5)
        assert scaling.r(h_multiple(1.0), 7.0) == approx(7.0, rel=1e-10)

    def test_round_trip(self):
        scaling = ScalingContext(spec=SlowVariationSpec.log_power(2.0), alpha=1.5, lam=1.0)
        threshold = exponential(0.5)
        for t in (4.0, 8.0, 12.0):
            r = scaling.r(threshold, t)
            assert scaling.h(r) == approx(threshold.value(t, scaling), rel=1e-8)


@ddt.ddt
class NormingTests(NumericsTestCase):
    """ Almost-sure normings. """

    def test_unit_liminf(self):
        t = 5.0
        expected = math.exp(t / 1.5) * math.log(t) ** (-1.0 / 1.5)
        assert as_norming(UNIT, 1.5, 1.0, t, NormingKinds.LIMINF) == approx(expected, rel=1e-12)

    def test_unit_logscale(self):
        t = 5.0
        expected = math.exp(t / 1.5) * t ** (1.0 / 1.5)
        assert as_norming(UNIT, 1.5, 1.0, t, NormingKinds.LOGSCALE) == approx(expected, rel=1e-12)

    @ddt.data(NormingKinds.LIMINF, NormingKinds.LOGSCALE)
    def test_exponential_rate(self, kind):
        spec = SlowVariationSpec.log_power(1.0)
        rates = [math.log(as_norming(spec, 1.5, 1.0, t, kind)) / t for t in (10.0, 100.0, 400.0)]
        assert abs(rates[-1] - 1.0 / 1.5) < abs(rates[0] - 1.0 / 1.5)
        assert rates[-1] == approx(1.0 / 1.5, rel=0.05)

    def test_domain(self):
        with self.assertRaises(InversionError):
            as_norming(UNIT, 1.5, 1.0, 1.0, NormingKinds.LIMINF)
        with self.assertRaises(InversionError):
            as_norming(UNIT, 1.5, 1.0, 3.0, 'sideways')
