"""
Tests for the result file writers.
"""

import math
import os
import shutil
import tempfile

import ddt
import yaml
from django.test import SimpleTestCase

from branching_extremes.apps.experiments.config import ExperimentConfig
from branching_extremes.apps.experiments.constants import CSV_COLUMNS, MANIFEST_FILE
from branching_extremes.apps.experiments.writers import (
    build_manifest,
    format_value,
    write_manifest,
    write_table,
    write_timing
)
from branching_extremes.apps.extremes_stats.data import Estimate, TableRow
from test_utils import experiment_sections


@ddt.ddt
class WriterTests(SimpleTestCase):
    """ Tests for the CSV, manifest and timing writers. """

    def setUp(self):
        super().setUp()
        self.workdir = tempfile.mkdtemp()
        self.addCleanup(shutil.rmtree, self.workdir, ignore_errors=True)

    @ddt.data(
        (None, 'nan'),
        (math.nan, 'nan'),
        (0.1, '0.1'),
        (1.0 / 3.0, '0.3333333333333333'),
        (math.inf, 'inf'),
        (7, '7'),
        ('weak_limit_rt', 'weak_limit_rt'),
    )
    @ddt.unpack
    def test_format_value(self, value, expected):
        assert format_value(value) == expected

    def test_table(self):
        rows = [
            TableRow(statistic='upper_deviation', t=9.0, x=2.0,
                     estimate=Estimate(estimate=0.5, stderr=0.25, target=0.4, samples=100), failures=3),
            TableRow(statistic='weak_limit_ks', t=9.0, estimate=Estimate(estimate=0.01, stderr=math.nan)),
        ]
        path = write_table(rows, os.path.join(self.workdir, 'table.csv'), 'upper_deviation')
        with open(path) as table_file:
            lines = table_file.read().splitlines()
        assert lines[0] == ','.join(CSV_COLUMNS)
        assert lines[1] == 'upper_deviation,upper_deviation,9.0,2.0,0.5,0.25,0.4,1.25,100,3'
        assert lines[2] == 'upper_deviation,weak_limit_ks,9.0,nan,0.01,nan,nan,nan,0,0'

    def test_manifest(self):
        config = ExperimentConfig.from_dict(experiment_sections())
        manifest = build_manifest(config, {'lam': 1.0, 'q': 0.0}, {'weak_limit_rt': 12})
        path = write_manifest(manifest, self.workdir)
        assert os.path.basename(path) == MANIFEST_FILE
        with open(path) as manifest_file:
            stored = yaml.safe_load(manifest_file)
        assert stored['constants'] == {'lam': 1.0, 'q': 0.0}
        assert stored['config'] == experiment_sections()
        assert stored['row_counts'] == {'weak_limit_rt': 12}
        assert set(stored['versions']) >= {'numpy', 'scipy'}

    def test_timing(self):
        with open(write_timing(1.25, self.workdir)) as timing_file:
            assert yaml.safe_load(timing_file) == {'wall_seconds': 1.25}
