"""
Shared fixtures for the app test suites.

Reference offspring laws and stable parameters with known closed forms, seeded
Monte Carlo base classes and a helper that writes experiment configs to a temp dir.
"""
import math
import os
import shutil
import tempfile

import numpy as np
import yaml
from django.test import SimpleTestCase, TestCase

from branching_extremes.apps.gw_numerics.data import OffspringLaw
from branching_extremes.apps.stable_motion.data import StableMotionParams

TEST_SEED = 20221019

# Offspring laws with closed-form constants.
YULE = OffspringLaw(pmf=(0.0, 0.0, 1.0), branching_rate=1.0)
YULE_FAST = OffspringLaw(pmf=(0.0, 0.0, 1.0), branching_rate=2.0)
BINARY_WITH_DEATH = OffspringLaw(pmf=(0.25, 0.0, 0.75), branching_rate=1.0)
LAZY_BINARY = OffspringLaw(pmf=(0.2, 0.3, 0.5), branching_rate=1.0)
TERNARY = OffspringLaw(pmf=(0.0, 0.0, 0.0, 1.0), branching_rate=2.0)
BINARY_LAWS = (YULE, BINARY_WITH_DEATH, LAZY_BINARY)

# psi(theta) = -|theta|^{3/2}.
REFERENCE_STABLE = StableMotionParams.from_c_star(1.5, 1.0)
CAUCHY = StableMotionParams.from_tails(1.0, 1.0 / math.pi, 1.0 / math.pi)
ONE_SIDED_HALF = StableMotionParams.from_tails(0.5, 0.5, 0.0)


def yule_pgf(s, t):
    """ E s^{Z_t} for the rate-one Yule process. """
    decay = math.exp(-t)
    return s * decay / (1.0 - (1.0 - decay) * s)


def yule_discounted_survival(s):
    """ int_0^inf e^{-r} (1 - F(s, r)) dr for the rate-one Yule process. """
    if s == 0.0:
        return 1.0
    return -(1.0 - s) * math.log1p(-s) / s


class NumericsTestCase(SimpleTestCase):
    """
    Base class for deterministic numerics tests.
    """

    def assert_close(self, actual, expected, rel=0.0, abs_tol=0.0):
        np.testing.assert_allclose(actual, expected, rtol=rel, atol=abs_tol)


class MonteCarloTestCase(SimpleTestCase):
    """
    Base class for seeded Monte Carlo tests.
    """

    seed = TEST_SEED

    def setUp(self):
        super().setUp()
        self.rng = np.random.default_rng(self.seed)

    def assert_within_standard_errors(self, samples, expected, count=3.0):
        """
        Check that the sample mean lies within ``count`` standard errors of ``expected``.
        """
        samples = np.asarray(samples, dtype=float)
        standard_error = samples.std(ddof=1) / math.sqrt(samples.size)
        assert abs(samples.mean() - expected) <= count * standard_error, (
            f'mean {samples.mean()!r} vs {expected!r} with standard error {standard_error!r}'
        )


class ExperimentConfigTestCase(TestCase):
    """
    Base class for tests that write experiment configuration files.
    """

    def setUp(self):
        super().setUp()
        self.workdir = tempfile.mkdtemp()
        self.addCleanup(shutil.rmtree, self.workdir, ignore_errors=True)

    def write_config(self, model=None, experiment=None, run=None, name='config.yaml'):
        """
        Write a three-section YAML config on top of a small Yule defaults set.
        """
        sections = {
            'model': {
                'offspring_pmf': [0.0, 0.0, 1.0],
                'branching_rate': 1.0,
                'alpha': 1.5,
                'q1': 0.5,
                'q2': 0.5,
            },
            'experiment': {
                'kind': 'gw_tables',
                'horizons': [1.0],
            },
            'run': {
                'replications': 4,
                'master_seed': TEST_SEED,
                'parallelism': 1,
                'output_dir': os.path.join(self.workdir, 'out'),
            },
        }
        for section, overrides in (('model', model), ('experiment', experiment), ('run', run)):
            sections[section].update(overrides or {})
        path = os.path.join(self.workdir, name)
        with open(path, 'w') as config_file:
            yaml.safe_dump(sections, config_file, default_flow_style=False)
        return path


def experiment_sections(model=None, experiment=None, run=None):
    """
    Parsed config sections for a small Yule weak-limit run, with per-section overrides.
    """
    sections = {
        'model': {'offspring_pmf': [0.0, 0.0, 1.0], 'branching_rate': 1.0, 'alpha': 1.5, 'q1': 0.5, 'q2': 0.5},
        'experiment': {'kind': 'weak_limit_rt', 'horizons': [1.0, 2.0]},
        'run': {'replications': 10, 'master_seed': TEST_SEED},
    }
    for section, overrides in (('model', model), ('experiment', experiment), ('run', run)):
        sections[section].update(overrides or {})
    return sections
