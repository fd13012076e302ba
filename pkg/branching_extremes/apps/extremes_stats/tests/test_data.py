""" Tests for extremes_stats data attributes. """

import math

import ddt
import numpy as np
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase
from pytest import approx

from branching_extremes.apps.extremes_stats.data import Estimate, PointMeasure, TableRow


@ddt.ddt
class PointMeasureTests(SimpleTestCase):
    """ Finite sums of Dirac masses. """

    def test_default_multiplicities(self):
        measure = PointMeasure(locations=[0.5, -2.0])
        assert measure.total_mass == 2
        assert len(measure) == 2

    def test_atoms_merge_equal_locations(self):
        measure = PointMeasure(locations=[3.0, 1.0, 3.0], multiplicities=[1, 2, 4])
        assert measure.atoms() == [(1.0, 2), (3.0, 5)]
        assert measure.total_mass == 7

    def test_sum_and_equality(self):
        left = PointMeasure(locations=[1.0], multiplicities=[2])
        right = PointMeasure(locations=[1.0, 4.0])
        assert left + right == PointMeasure(locations=[4.0, 1.0], multiplicities=[1, 3])

    def test_scaled_and_mass_above(self):
        measure = PointMeasure(locations=[2.0, 6.0, -8.0], multiplicities=[1, 3, 2]).scaled(2.0)
        assert measure.atoms() == [(-4.0, 2), (1.0, 1), (3.0, 3)]
        assert measure.mass_above(1.0) == 3
        assert measure.max_location() == 3.0

    def test_infinite_locations(self):
        assert PointMeasure(locations=[math.inf]).mass_above(1e300) == 1

    def test_empty(self):
        empty = PointMeasure.empty()
        assert empty.is_empty
        assert empty.total_mass == 0
        assert empty.max_location() is None

    @ddt.data(
        ([1.0], [0]),
        ([1.0, 2.0], [1]),
        ([math.nan], [1]),
    )
    @ddt.unpack
    def test_invalid(self, locations, multiplicities):
        with self.assertRaises(ValidationError):
            PointMeasure(locations=locations, multiplicities=multiplicities)

    def test_arrays_are_read_only(self):
        measure = PointMeasure(locations=[1.0])
        with self.assertRaises(ValueError):
            measure.locations[0] = 2.0

    def test_nonpositive_scale(self):
        with self.assertRaises(ValidationError):
            PointMeasure(locations=[1.0]).scaled(0.0)


class EstimateTests(SimpleTestCase):
    """ Monte Carlo estimates. """

    def test_from_samples(self):
        estimate = Estimate.from_samples([0.0, 1.0, 1.0, 0.0], target=1.0, scale=2.0)
        assert estimate.estimate == 1.0
        assert estimate.stderr == approx(2.0 * math.sqrt(1.0 / 3.0) / 2.0)
        assert estimate.samples == 4
        assert estimate.ratio == 1.0
        assert estimate.within(0.0)

    def test_missing_target(self):
        estimate = Estimate.from_samples([1.0, 2.0])
        assert math.isnan(estimate.ratio)
        assert not estimate.within()
        assert math.isnan(estimate.as_dict()['target'])

    def test_no_samples(self):
        estimate = Estimate.from_samples(np.zeros(0))
        assert estimate.samples == 0
        assert math.isnan(estimate.estimate)

    def test_table_row(self):
        row = TableRow(statistic='upper_deviation', t=9, x=2, estimate=Estimate(estimate=0.5, stderr=0.1, target=0.25))
        assert list(row.as_dict('upper_deviation')) == [
            'experiment', 'statistic', 't', 'x', 'estimate', 'stderr', 'target', 'ratio', 'samples', 'failures',
        ]
        assert row.as_dict('upper_deviation')['ratio'] == 2.0
