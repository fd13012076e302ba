""" Tests for the limit-theorem estimators. """

import math

import ddt
import mock
import numpy as np
from django.core.exceptions import ValidationError
from pytest import approx
from scipy import stats

from branching_extremes.apps.extremes_stats import estimators
from branching_extremes.apps.extremes_stats.constants import Statistics
from branching_extremes.apps.extremes_stats.data import PointMeasure
from branching_extremes.apps.extremes_stats.estimators import (
    as_proxies,
    conditional_pareto_ks,
    delayed_vartheta_star,
    i_functional,
    limit_cdf_rt,
    lower_deviation_ratio,
    lower_deviation_target,
    one_big_jump_discrepancy,
    one_big_jump_estimates,
    one_big_jump_sample,
    pareto_ks_statistic,
    sup_r_inequality_check,
    upper_deviation_ratio,
    upper_deviation_target,
    weak_limit_ks
)
from branching_extremes.apps.extremes_stats.exceptions import InsufficientSamplesError
from branching_extremes.apps.extremes_stats.tests.factories import death_bundle, summaries, yule_bundle
from branching_extremes.apps.gw_numerics.data import indicator_below, smooth_cutoff
from branching_extremes.apps.scaling.constants import ThresholdRegimes
from branching_extremes.apps.scaling.data import custom, exponential, h_multiple, infinite
from branching_extremes.apps.scaling.norming import ScalingContext
from branching_extremes.apps.tree_sim.data import ModelParams, TreeSummary
from branching_extremes.apps.tree_sim.simulation import simulate
from branching_extremes.apps.tree_sim.tests.factories import YULE_MODEL, build_snapshot, cherry
from test_utils import REFERENCE_STABLE, YULE, MonteCarloTestCase, NumericsTestCase

SCALING = ScalingContext(alpha=1.5, lam=1.0)


@ddt.ddt
class IFunctionalTests(NumericsTestCase):
    """ I(g, nu) = prod g(x_k)^{m_k}. """

    def test_empty_measure(self):
        assert i_functional(indicator_below(1.0), PointMeasure.empty()) == 1.0

    def test_atom_where_g_is_one(self):
        assert i_functional(smooth_cutoff(1.0, 1.0, 1.0), PointMeasure(locations=[0.5])) == 1.0

    def test_multiplicity(self):
        g = smooth_cutoff(1.0, 4.0, 1.0)
        measure = PointMeasure(locations=[3.0], multiplicities=[2])
        assert i_functional(g, measure) == approx(0.25)

    def test_multiplicativity(self):
        g = smooth_cutoff(0.5, 2.0, 0.8)
        first = PointMeasure(locations=[0.7, -1.5])
        second = PointMeasure(locations=[2.0], multiplicities=[3])
        assert i_functional(g, first + second) == approx(i_functional(g, first) * i_functional(g, second))


@ddt.ddt
class LimitCdfTests(NumericsTestCase):
    """ The limit law of R_t / h(t). """

    def test_yule_closed_form(self):
        bundle = yule_bundle()
        star = bundle.constants.vartheta_star
        assert limit_cdf_rt(bundle, 1.0) == approx(1.0 / (1.0 + star), rel=1e-8)
        grid = np.array([0.25, 2.0, 7.0])
        self.assert_close(limit_cdf_rt(bundle, grid), 1.0 / (1.0 + star * grid ** -1.5), rel=1e-8)

    @ddt.data(0.0, -3.0)
    def test_nonpositive(self, x):
        assert limit_cdf_rt(yule_bundle(), x) == 0.0

    def test_proper_and_monotone(self):
        grid = np.geomspace(1e-3, 1e6, 60)
        values = limit_cdf_rt(yule_bundle(), grid)
        assert np.all(np.diff(values) >= 0.0)
        assert values[0] < 1e-3
        assert values[-1] == approx(1.0, abs=1e-8)

    def test_infinite_argument(self):
        assert limit_cdf_rt(yule_bundle(), math.inf) == approx(1.0, abs=1e-12)


class WeakLimitTests(MonteCarloTestCase):
    """ KS distance to the limit law. """

    def test_draws_from_the_limit_law(self):
        bundle = yule_bundle()
        star = bundle.constants.vartheta_star
        uniforms = self.rng.random(2000)
        ratios = (star * uniforms / (1.0 - uniforms)) ** (1.0 / 1.5)
        snaps = summaries(4.0, list(ratios * SCALING.h(4.0)) + [None])
        result = weak_limit_ks(snaps, SCALING, bundle)
        assert result.estimate < 0.05
        assert result.samples == 2000

    def test_no_survivors(self):
        with self.assertRaises(InsufficientSamplesError):
            weak_limit_ks(summaries(1.0, [None, None]), SCALING, yule_bundle())


class UpperDeviationTests(NumericsTestCase):
    """ Normalized exceedance frequencies above Lambda(t). """

    def test_normalized_frequency(self):
        level = 2.0 * SCALING.h(2.0)
        snaps = summaries(2.0, [None, 1.0, level * 1.1, level * 1.4])
        snaps.append(TreeSummary.failed_replication(2.0, 'population_cap'))
        estimate = upper_deviation_ratio(snaps, h_multiple(2.0), SCALING, yule_bundle())
        assert estimate.samples == 4
        assert estimate.exceedances == 2
        assert estimate.estimate == approx(2.0 ** 1.5 * 0.5, rel=1e-12)

    def test_target_for_h_multiple(self):
        bundle = yule_bundle()
        star = bundle.constants.vartheta_star
        expected = (1.0 - 1.0 / (1.0 + star * 8.0 ** -1.5)) * 8.0 ** 1.5
        assert upper_deviation_target(bundle, h_multiple(8.0)) == approx(expected, rel=1e-8)
        assert upper_deviation_target(bundle, h_multiple(1e4)) == approx(star, rel=1e-3)

    def test_target_for_fast_threshold(self):
        assert upper_deviation_target(yule_bundle(), exponential(2.0)) == yule_bundle().constants.vartheta_star

    def test_infinite_threshold(self):
        with mock.patch.object(estimators, 'logger') as logger:
            estimate = upper_deviation_ratio(summaries(2.0, [5.0, 9.0]), infinite(), SCALING, yule_bundle())
        assert estimate.estimate == 0.0
        assert estimate.exceedances == 0
        logger.warning.assert_called_once()

    def test_zero_exceedances_warn(self):
        with mock.patch.object(estimators, 'logger') as logger:
            estimate = upper_deviation_ratio(summaries(2.0, [1.0, 2.0]), h_multiple(10.0), SCALING, yule_bundle())
        assert estimate.estimate == 0.0
        logger.warning.assert_called_once()


class ParetoTests(MonteCarloTestCase):
    """ Conditional Pareto law of exceedances. """

    def test_pareto_sample(self):
        draws = stats.pareto(1.5).rvs(size=2000, random_state=self.rng)
        assert pareto_ks_statistic(draws, 1.5) < 0.05

    def test_alpha_mismatch(self):
        # sup_x |x^{-0.75} - x^{-1.5}| = 1/4.
        draws = stats.pareto(1.5).rvs(size=2000, random_state=self.rng)
        assert pareto_ks_statistic(draws, 0.75) > 0.2

    def test_few_samples_warn(self):
        with mock.patch.object(estimators, 'logger') as logger:
            pareto_ks_statistic([1.5, 2.0, 3.0], 1.5)
        logger.warning.assert_called_once()

    def test_no_samples(self):
        with self.assertRaises(InsufficientSamplesError):
            pareto_ks_statistic([], 1.5)

    def test_conditional_on_exceedance(self):
        level = 2.0 * SCALING.h(3.0)
        draws = stats.pareto(1.5).rvs(size=500, random_state=self.rng) * level
        snaps = summaries(3.0, list(draws) + [level * 0.5, None, 1.0])
        estimate = conditional_pareto_ks(snaps, h_multiple(2.0), SCALING)
        assert estimate.samples == 500
        assert estimate.estimate < 0.1


class LowerDeviationTests(NumericsTestCase):
    """ Normalized P*(R_t <= Lambda(t)). """

    def test_yule_target(self):
        bundle = yule_bundle()
        assert lower_deviation_target(bundle) == approx(1.0 / bundle.constants.vartheta_star, rel=1e-6)

    def test_critical_threshold_is_plain_frequency(self):
        level = SCALING.h(2.0)
        snaps = summaries(2.0, [level * 0.5, level * 0.9, level * 3.0, None])
        estimate = lower_deviation_ratio(snaps, h_multiple(1.0), SCALING, yule_bundle())
        assert estimate.samples == 3
        assert estimate.estimate == approx(2.0 / 3.0, rel=1e-9)

    def test_sub_threshold_scale(self):
        threshold = exponential(0.5)
        snaps = summaries(4.0, [1.0, 100.0])
        estimate = lower_deviation_ratio(snaps, threshold, SCALING, yule_bundle())
        # r(t) = t / 2 for L = 1, so the scale is e^{rho t / 2}.
        assert estimate.estimate == approx(math.exp(2.0) * 0.5, rel=1e-9)

    def test_super_threshold_rejected(self):
        with self.assertRaises(ValidationError):
            lower_deviation_ratio(summaries(2.0, [1.0]), exponential(2.0), SCALING, yule_bundle())

    def test_no_survivors(self):
        with self.assertRaises(InsufficientSamplesError):
            lower_deviation_ratio(summaries(2.0, [None]), h_multiple(1.0), SCALING, yule_bundle())


@ddt.ddt
class DelayedConstantTests(NumericsTestCase):
    """ The upper-deviation constant for survival to t + delay. """

    def test_no_delay(self):
        bundle = death_bundle()
        assert delayed_vartheta_star(bundle, 0.0) == approx(bundle.constants.vartheta_star, rel=1e-8)

    @ddt.data(0.5, 3.0)
    def test_yule_never_dies(self, delay):
        bundle = yule_bundle()
        assert delayed_vartheta_star(bundle, delay) == approx(bundle.constants.vartheta_star, rel=1e-8)

    def test_decreases_to_the_survivor_limit(self):
        bundle = death_bundle()
        values = [delayed_vartheta_star(bundle, delay) for delay in (0.0, 1.0, 4.0, 40.0)]
        assert all(later < earlier for earlier, later in zip(values, values[1:]))
        q, lam = bundle.constants.q, bundle.constants.lam
        assert values[-1] == approx(bundle.stable.q1 / bundle.alpha * (1.0 - q) / lam, rel=1e-5)

    def test_negative_delay(self):
        with self.assertRaises(ValidationError):
            delayed_vartheta_star(yule_bundle(), -1.0)


class OneBigJumpTests(NumericsTestCase):
    """ |I(g, X_t / a) - I(g, Y_t / a)|. """

    def test_hand_built_trees(self):
        g = smooth_cutoff(1.0, 1.0, 0.5)
        extinct = build_snapshot(parent=[-1], birth=[0.0], end=[0.4], displacement=[3.0], alive=[False], t=1.0)
        single = build_snapshot(parent=[-1], birth=[0.0], end=[1.0], displacement=[3.0], alive=[True], t=1.0)
        raw, normalized = one_big_jump_discrepancy([cherry(), extinct, single], g, 1.0, SCALING)
        # X = {1, 5.5}, Y = {2 (twice), -1, 3.5}: |0.5 - 0.125|.
        assert raw.estimate == approx(0.375 / 3.0)
        assert normalized.estimate == approx(math.exp(-1.0) * 0.375 / 3.0)

    def test_nonpositive_scale(self):
        with self.assertRaises(ValidationError):
            one_big_jump_discrepancy([cherry()], smooth_cutoff(1.0, 1.0, 0.5), 0.0, SCALING)

    def test_per_tree_samples(self):
        g = smooth_cutoff(1.0, 1.0, 0.5)
        assert one_big_jump_sample(cherry(), g, 1.0) == approx(0.375)
        raw, normalized = one_big_jump_estimates([0.375, 0.0, 0.0], 2.0, 1.0, SCALING)
        assert raw.samples == 3
        assert raw.estimate == approx(0.125)
        assert normalized.estimate == approx(math.exp(-2.0) * 0.125)


class ProxyTests(NumericsTestCase):
    """ Almost-sure proxies. """

    def test_rows(self):
        snaps_by_t = {
            2.0: summaries(2.0, [1.0, math.exp(2.0), math.exp(4.0)]),
            0.5: summaries(0.5, [None]),
        }
        rows = as_proxies(snaps_by_t, SCALING, growth=exponential(2.0))
        statistics = [row.statistic for row in rows]
        assert statistics.count(Statistics.LIMINF_NORMED_QUANTILE) == 5
        growth_row = rows[statistics.index(Statistics.GROWTH_EXCEEDANCE)]
        assert growth_row.estimate.estimate == approx(1.0 / 3.0)
        rate_row = rows[statistics.index(Statistics.LOG_RATE_MEDIAN)]
        assert rate_row.estimate.estimate == approx(1.0)
        assert rate_row.estimate.target == approx(1.0 / 1.5)
        assert all(row.t == 2.0 for row in rows)

    def test_custom_growth_curve(self):
        growth = custom(lambda t: math.exp(1.5 * t), ThresholdRegimes.SUPER, name='G')
        rows = as_proxies({2.0: summaries(2.0, [1.0, math.exp(2.0), math.exp(4.0)])}, SCALING, growth=growth)
        growth_row = next(row for row in rows if row.statistic == Statistics.GROWTH_EXCEEDANCE)
        assert growth_row.estimate.estimate == approx(1.0 / 3.0)
        assert growth_row.estimate.exceedances == 1


class SupInequalityTests(MonteCarloTestCase):
    """ P(sup R >= x) against e^{lambda t} P(sup xi >= x). """

    def test_inequality_holds(self):
        snaps = [simulate(YULE_MODEL, 1.0, self.rng, record_sup_path=True, substeps=8) for _ in range(400)]
        checks = sup_r_inequality_check(snaps, yule_bundle(), [-math.inf, 0.5, 2.0], self.rng, 5000, substeps=8)
        assert all(check.holds for check in checks)
        assert checks[0].left.estimate == 1.0
        assert checks[0].right.estimate == approx(math.e)

    def test_reference_paths_start_where_the_trees_do(self):
        model = ModelParams(law=YULE, stable=REFERENCE_STABLE, start_position=5.0)
        snaps = [simulate(model, 0.2, self.rng, record_sup_path=True, substeps=8) for _ in range(200)]
        (shifted,) = sup_r_inequality_check(snaps, yule_bundle(), [4.5], self.rng, 2000, substeps=8,
                                            start_position=5.0)
        assert shifted.left.estimate == 1.0
        assert shifted.right.estimate == approx(math.exp(0.2))
        assert shifted.holds
        # Paths from the origin rarely reach 4.5 by t = 0.2.
        (unshifted,) = sup_r_inequality_check(snaps, yule_bundle(), [4.5], self.rng, 2000, substeps=8)
        assert not unshifted.holds

    def test_requires_recorded_suprema(self):
        snaps = [simulate(YULE_MODEL, 1.0, self.rng)]
        with self.assertRaises(ValidationError):
            sup_r_inequality_check(snaps, yule_bundle(), [1.0], self.rng, 10)
