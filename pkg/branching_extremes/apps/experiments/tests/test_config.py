"""
Tests for experiment config loading and validation.
"""

import math
import os

import ddt
from django.conf import settings
from django.test import override_settings
from pytest import approx

from branching_extremes.apps.experiments.config import ExperimentConfig, load_config
from branching_extremes.apps.experiments.constants import DEFAULT_X_GRID, ExperimentKinds
from branching_extremes.apps.experiments.exceptions import ExperimentConfigError
from branching_extremes.apps.scaling.constants import SlowVariationFamilies, ThresholdKinds, ThresholdRegimes
from test_utils import TEST_SEED, ExperimentConfigTestCase, experiment_sections


@ddt.ddt
class LoadConfigTests(ExperimentConfigTestCase):
    """ Tests for load_config. """

    def test_defaults(self):
        config = load_config(self.write_config())
        assert config.kind == ExperimentKinds.GW_TABLES
        assert config.horizons == (1.0,)
        assert config.x_grid == DEFAULT_X_GRID
        assert config.replications == 4
        assert config.master_seed == TEST_SEED
        assert config.threshold is None
        assert config.slow_variation.is_unit
        assert config.law.is_yule
        assert config.output_dir == os.path.join(self.workdir, 'out')

    def test_scaling_context(self):
        config = load_config(self.write_config(model={'branching_rate': 2.0}))
        scaling = config.scaling()
        assert scaling.lam == approx(2.0)
        assert scaling.alpha == 1.5
        assert scaling.h(1.5) == approx(7.38905609893065, rel=1e-12)

    def test_c_star_instead_of_tails(self):
        path = self.write_config(name='c_star.yaml')
        with open(path) as config_file:
            text = config_file.read()
        text = text.replace('q1: 0.5', 'c_star_real: 1.0').replace('q2: 0.5', 'c_star_imag: 0.0')
        with open(path, 'w') as config_file:
            config_file.write(text)
        config = load_config(path)
        assert config.stable.q1 == approx(config.stable.q2)
        assert config.stable.c_star.real == approx(1.0, rel=1e-10)

    def test_thresholds(self):
        config = load_config(self.write_config(
            experiment={'kind': ExperimentKinds.LOWER_DEVIATION, 'threshold_kind': ThresholdKinds.EXPONENTIAL,
                        'threshold_param': 0.5},
        ))
        assert config.threshold.kind == ThresholdKinds.EXPONENTIAL
        assert config.threshold.regime == ThresholdRegimes.SUB
        assert config.threshold_or(None) is config.threshold

    def test_power_exponential_threshold(self):
        config = ExperimentConfig.from_dict(experiment_sections(experiment={
            'kind': ExperimentKinds.LOWER_DEVIATION,
            'threshold_kind': ThresholdKinds.POWER_EXPONENTIAL,
            'threshold_param': 2.0,
            'threshold_rate': 0.25,
            'threshold_power': 0.25,
            'threshold_regime': ThresholdRegimes.SUB,
        }))
        threshold = config.threshold
        assert threshold.regime == ThresholdRegimes.SUB
        expected = math.log(2.0) + 0.25 * math.log(3.0) + 0.25 * 3.0 / 1.5
        assert threshold.log_value(3.0, config.scaling()) == approx(expected)

    def test_declared_regime_overrides_factory(self):
        # With L = 1 / log(e + x), h(t) < e^{lambda t / alpha}, so exp(lambda t / alpha) outgrows h.
        sections = experiment_sections(
            model={'slow_variation': SlowVariationFamilies.LOG_POWER, 'slow_variation_param': -1.0},
            experiment={'kind': ExperimentKinds.UPPER_DEVIATION, 'threshold_kind': ThresholdKinds.EXPONENTIAL,
                        'threshold_param': 1.0},
        )
        with self.assertRaises(ExperimentConfigError) as context:
            ExperimentConfig.from_dict(sections)
        assert 'experiment.threshold_regime' in context.exception.errors
        sections['experiment']['threshold_regime'] = ThresholdRegimes.SUPER
        config = ExperimentConfig.from_dict(sections)
        assert config.threshold.regime == ThresholdRegimes.SUPER

    def test_largest_cutoff_the_panel_allows(self):
        config = ExperimentConfig.from_dict(experiment_sections(
            experiment={'kind': ExperimentKinds.XI_COMPARE, 'n_infinity_cutoff': 0.05},
        ))
        assert config.n_infinity_cutoff == 0.05

    def test_log_power_slow_variation(self):
        config = load_config(self.write_config(
            model={'slow_variation': SlowVariationFamilies.LOG_POWER, 'slow_variation_param': 1.0},
        ))
        assert config.slow_variation.family == SlowVariationFamilies.LOG_POWER
        assert not config.slow_variation.is_unit

    def test_missing_file(self):
        with self.assertRaises(ExperimentConfigError) as context:
            load_config(os.path.join(self.workdir, 'absent.yaml'))
        assert 'Could not read' in context.exception.message

    def test_invalid_yaml(self):
        path = os.path.join(self.workdir, 'broken.yaml')
        with open(path, 'w') as config_file:
            config_file.write('model: [unclosed\n')
        with self.assertRaises(ExperimentConfigError) as context:
            load_config(path)
        assert 'not valid YAML' in context.exception.message

    @ddt.data(
        ({'run': {'replications': 0}}, 'run.replications'),
        ({'run': {'replications': 2.5}}, 'run.replications'),
        ({'run': {'master_seed': 2 ** 64}}, 'run.master_seed'),
        ({'run': {'master_seed': -3}}, 'run.master_seed'),
        ({'run': {'parallelism': 0}}, 'run.parallelism'),
        ({'experiment': {'horizons': [2.0, 1.0]}}, 'experiment.horizons'),
        ({'experiment': {'horizons': [0.0, 1.0]}}, 'experiment.horizons'),
        ({'experiment': {'horizons': []}}, 'experiment.horizons'),
        ({'experiment': {'kind': 'tea_leaves'}}, 'experiment.kind'),
        ({'experiment': {'threshold_kind': 'sideways'}}, 'experiment.threshold_kind'),
        ({'experiment': {'delay': -1.0}}, 'experiment.delay'),
        ({'experiment': {'kind': 'lower_deviation', 'threshold_kind': 'power_exponential', 'threshold_rate': 2.0,
                        'threshold_regime': 'sub'}}, 'experiment.threshold_regime'),
        ({'experiment': {'kind': 'lower_deviation', 'threshold_kind': 'h_multiple', 'threshold_param': 2.0,
                        'threshold_regime': 'sub'}}, 'experiment.threshold_regime'),
        ({'experiment': {'kind': 'lower_deviation', 'threshold_kind': 'power_exponential', 'threshold_rate': 0.5}},
         'experiment.threshold_regime'),
        ({'experiment': {'kind': 'lower_deviation', 'threshold_kind': 'exponential', 'threshold_param': 2.0}},
         'experiment.threshold_regime'),
        ({'experiment': {'kind': 'upper_deviation', 'threshold_kind': 'exponential', 'threshold_param': 0.5}},
         'experiment.threshold_regime'),
        ({'experiment': {'kind': 'xi_compare', 'threshold_regime': 'diagonal', 'threshold_kind': 'exponential',
                        'threshold_param': 0.5}}, 'experiment.threshold_regime'),
        ({'experiment': {'kind': 'xi_compare', 'n_infinity_cutoff': 0.06}}, 'experiment.n_infinity_cutoff'),
        ({'experiment': {'colour': 'blue'}}, 'experiment.colour'),
        ({'model': {'offspring_pmf': [0.5, 0.5]}}, 'model.offspring_pmf'),
        ({'model': {'branching_rate': 0.0}}, 'model.branching_rate'),
        ({'model': {'alpha': 2.5}}, 'model.alpha'),
        ({'model': {'c_star_real': 1.0}}, 'model.c_star_real'),
        ({'model': {'slow_variation': 'log_power', 'slow_variation_param': 9.0}}, 'model.slow_variation_param'),
    )
    @ddt.unpack
    def test_field_errors(self, overrides, field):
        with self.assertRaises(ExperimentConfigError) as context:
            ExperimentConfig.from_dict(experiment_sections(**overrides))
        assert field in context.exception.errors

    def test_errors_are_collected_together(self):
        with self.assertRaises(ExperimentConfigError) as context:
            ExperimentConfig.from_dict(experiment_sections(run={'replications': 0, 'master_seed': -1}))
        assert {'run.replications', 'run.master_seed'} <= set(context.exception.errors)
        assert len(context.exception.field_messages()) == len(context.exception.errors)

    def test_missing_keys_and_sections(self):
        sections = experiment_sections()
        del sections['run']['master_seed']
        del sections['model']
        sections['extras'] = {}
        with self.assertRaises(ExperimentConfigError) as context:
            ExperimentConfig.from_dict(sections)
        errors = context.exception.errors
        assert errors['run.master_seed'] == 'This field is required.'
        assert errors['model'] == 'Missing section.'
        assert errors['extras'] == 'Unknown section.'

    def test_nested_values_rejected(self):
        with self.assertRaises(ExperimentConfigError) as context:
            ExperimentConfig.from_dict(experiment_sections(experiment={'x_grid': {'low': 1.0}}))
        assert 'experiment.x_grid' in context.exception.errors

    def test_horizons_required_for_simulations(self):
        sections = experiment_sections()
        del sections['experiment']['horizons']
        with self.assertRaises(ExperimentConfigError) as context:
            ExperimentConfig.from_dict(sections)
        assert 'experiment.horizons' in context.exception.errors

    @override_settings(SIMULATION_HORIZON_CAP=1.5)
    def test_horizon_cap(self):
        with self.assertRaises(ExperimentConfigError) as context:
            ExperimentConfig.from_dict(experiment_sections())
        assert 'experiment.horizons' in context.exception.errors

    def test_not_a_mapping(self):
        with self.assertRaises(ExperimentConfigError):
            ExperimentConfig.from_dict(['model', 'experiment', 'run'])


@ddt.ddt
class ShippedConfigTests(ExperimentConfigTestCase):
    """ The configs under configs/ stay valid. """

    @ddt.data(*(kind for kind, _ in ExperimentKinds.CHOICES))
    def test_config_for_every_kind(self, kind):
        config = load_config(os.path.join(settings.PROJECT_ROOT, '..', 'configs', f'{kind}.yaml'))
        assert config.kind == kind
        assert config.output_dir == f'results/{kind}'
