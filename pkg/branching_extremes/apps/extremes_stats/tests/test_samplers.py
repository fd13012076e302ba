""" Tests for the N_infinity and Xi samplers. """

import mock
from django.core.exceptions import ValidationError
from django.test import override_settings

from branching_extremes.apps.extremes_stats.bundle import LimitLawBundle
from branching_extremes.apps.extremes_stats.exceptions import RejectionBudgetExhausted
from branching_extremes.apps.extremes_stats.samplers import sample_n_infinity, sample_xi
from branching_extremes.apps.extremes_stats.tests.factories import yule_bundle
from test_utils import ONE_SIDED_HALF, YULE, MonteCarloTestCase

CUTOFF = 0.25


class NInfinityTests(MonteCarloTestCase):
    """ The Cox cluster process beyond a cutoff. """

    def test_zero_w(self):
        assert sample_n_infinity(yule_bundle(), 0.0, self.rng).is_empty

    def test_invalid_arguments(self):
        with self.assertRaises(ValidationError):
            sample_n_infinity(yule_bundle(), 1.0, self.rng, cutoff=0.0)
        with self.assertRaises(ValidationError):
            sample_n_infinity(yule_bundle(), -1.0, self.rng)

    def test_expected_atom_count(self):
        bundle = yule_bundle()
        stable = bundle.stable
        w = 1.5
        expected = bundle.constants.vartheta * w * (stable.q1 + stable.q2) * CUTOFF ** -1.5 / 1.5
        counts = [len(sample_n_infinity(bundle, w, self.rng, cutoff=CUTOFF)) for _ in range(3000)]
        self.assert_within_standard_errors(counts, expected)

    def test_atoms_lie_beyond_cutoff(self):
        measure = sample_n_infinity(yule_bundle(), 20.0, self.rng, cutoff=CUTOFF)
        assert len(measure) > 0
        assert (abs(measure.locations) >= CUTOFF).all()
        assert (measure.multiplicities >= 1).all()

    def test_one_sided_motion(self):
        bundle = LimitLawBundle.from_model(YULE, ONE_SIDED_HALF)
        measure = sample_n_infinity(bundle, 5.0, self.rng, cutoff=CUTOFF)
        assert (measure.locations > 0.0).all()

    def test_mark_frequencies(self):
        marks = []
        for _ in range(400):
            marks.extend(sample_n_infinity(yule_bundle(), 2.0, self.rng, cutoff=CUTOFF).multiplicities.tolist())
        # P(T = 1) = 1/2 for the rate-one Yule skeleton.
        self.assert_within_standard_errors([mark == 1 for mark in marks], 0.5)

    @override_settings(N_INFINITY_CUTOFF=2.0)
    def test_default_cutoff_from_settings(self):
        measure = sample_n_infinity(yule_bundle(), 10.0, self.rng)
        assert (abs(measure.locations) >= 2.0).all()


class XiTests(MonteCarloTestCase):
    """ Superpositions of conditioned N_infinity components. """

    def test_no_atom_above_one(self):
        for _ in range(200):
            xi = sample_xi(yule_bundle(), self.rng, cutoff=CUTOFF)
            assert xi.mass_above(1.0) == 0

    def test_rejection_budget(self):
        with mock.patch.object(LimitLawBundle, 'sample_w', return_value=0.0):
            with self.assertRaises(RejectionBudgetExhausted) as error:
                sample_xi(yule_bundle(), self.rng, cutoff=CUTOFF, budget=5)
        assert error.exception.budget == 5

    @override_settings(XI_REJECTION_BUDGET=3)
    def test_budget_from_settings(self):
        with mock.patch.object(LimitLawBundle, 'sample_w', return_value=0.0) as sample_w:
            with self.assertRaises(RejectionBudgetExhausted):
                sample_xi(yule_bundle(), self.rng, cutoff=CUTOFF)
        assert sample_w.call_count == 3
