""" Tests for the functional C(phi). """

import ddt
from pytest import approx

from branching_extremes.apps.gw_numerics.data import (
    constant_one,
    exp_neg_indicator_above,
    exp_neg_indicator_outside,
    indicator_below,
    smooth_cutoff
)
from branching_extremes.apps.gw_numerics.flows import vartheta_star
from branching_extremes.apps.gw_numerics.functionals import c_functional
from branching_extremes.apps.stable_motion.data import StableMotionParams
from test_utils import BINARY_WITH_DEATH, REFERENCE_STABLE, YULE, NumericsTestCase, yule_discounted_survival

SKEWED = StableMotionParams.from_tails(0.7, 0.4, 0.1)


@ddt.ddt
class CFunctionalTests(NumericsTestCase):
    """ C(phi) = int_0^inf e^{-lambda r} int (1 - F(phi(x), r)) v_alpha(dx) dr. """

    @ddt.data(YULE, BINARY_WITH_DEATH)
    def test_indicator_gives_vartheta_star(self, law):
        for stable in (REFERENCE_STABLE, SKEWED):
            value = c_functional(indicator_below(1.0), law, stable)
            assert value == approx(vartheta_star(law, stable), rel=1e-8)

    def test_constant_one(self):
        assert c_functional(constant_one(), YULE, REFERENCE_STABLE) == 0.0

    def test_scaling_identity_for_indicator(self):
        star = vartheta_star(YULE, REFERENCE_STABLE)
        value = c_functional(indicator_below(2.0), YULE, REFERENCE_STABLE)
        assert value == approx(star * 2.0 ** -1.5, rel=1e-8)

    @ddt.data(0.5, 3.0)
    def test_scaling_identity_for_smooth_function(self, x):
        phi = smooth_cutoff(1.0, 0.5, 0.7)
        base = c_functional(phi, BINARY_WITH_DEATH, SKEWED)
        scaled = c_functional(phi.rescaled(x), BINARY_WITH_DEATH, SKEWED)
        assert scaled == approx(x ** -SKEWED.alpha * base, rel=1e-7)

    def test_yule_closed_form(self):
        theta, cut = 0.8, 1.5
        value = c_functional(exp_neg_indicator_above(theta, cut), YULE, REFERENCE_STABLE)
        weight = REFERENCE_STABLE.q1 / REFERENCE_STABLE.alpha
        expected = weight * cut ** -1.5 * yule_discounted_survival(2.718281828459045 ** -theta)
        assert value == approx(expected, rel=1e-8)

    def test_two_sided_function_uses_both_tails(self):
        upper = c_functional(exp_neg_indicator_above(1.0, 1.0), YULE, SKEWED)
        both = c_functional(exp_neg_indicator_outside(1.0, 1.0), YULE, SKEWED)
        assert both == approx(upper * (SKEWED.q1 + SKEWED.q2) / SKEWED.q1, rel=1e-8)
