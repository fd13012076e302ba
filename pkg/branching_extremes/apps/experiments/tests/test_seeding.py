"""
Tests for per-replication random streams.
"""

import ddt
import numpy as np
from django.test import SimpleTestCase

from branching_extremes.apps.experiments.constants import RandomStreams
from branching_extremes.apps.experiments.seeding import seed_stream
from test_utils import TEST_SEED


@ddt.ddt
class SeedStreamTests(SimpleTestCase):
    """ Tests for seed_stream. """

    def test_reproducible(self):
        first = seed_stream(TEST_SEED, 7).random(100)
        second = seed_stream(TEST_SEED, 7).random(100)
        np.testing.assert_array_equal(first, second)

    @ddt.data(
        (TEST_SEED, 8, 0, RandomStreams.TREES),
        (TEST_SEED, 7, 1, RandomStreams.TREES),
        (TEST_SEED, 7, 0, RandomStreams.LIMIT_SAMPLES),
        (TEST_SEED + 1, 7, 0, RandomStreams.TREES),
    )
    @ddt.unpack
    def test_distinct_keys_differ(self, master_seed, index, horizon_index, stream):
        reference = seed_stream(TEST_SEED, 7).random(100)
        other = seed_stream(master_seed, index, horizon_index, stream).random(100)
        assert not np.array_equal(reference, other)

    def test_uses_philox(self):
        assert seed_stream(TEST_SEED, 0).bit_generator.__class__.__name__ == 'Philox'

    def test_full_width_seed(self):
        assert seed_stream(2 ** 64 - 1, 0).random() < 1.0

    @ddt.data((-1, 0), (2 ** 64, 0), (TEST_SEED, -1))
    @ddt.unpack
    def test_invalid_keys(self, master_seed, index):
        with self.assertRaises(ValueError):
            seed_stream(master_seed, index)
