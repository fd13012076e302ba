"""
Result files of an experiment run.

The CSV and the manifest depend on the config alone; wall time goes to a separate file.
"""

import csv
import logging
import math
import os
from importlib import metadata

import yaml

from branching_extremes.apps.experiments.constants import CSV_COLUMNS, MANIFEST_FILE, TIMING_FILE

logger = logging.getLogger(__name__)

VERSIONED_PACKAGES = ('numpy', 'scipy', 'Django', 'celery', 'attrs', 'PyYAML')


def format_value(value):
    """
    repr() for floats (shortest round trip), 'nan' for missing values.
    """
    if value is None:
        return 'nan'
    if isinstance(value, float):
        return 'nan' if math.isnan(value) else repr(value)
    return str(value)


def _package_version(name):
    try:
        return metadata.version(name)
    except metadata.PackageNotFoundError:
        return 'unknown'


def package_versions():
    return {name: _package_version(name) for name in VERSIONED_PACKAGES}


def write_table(rows, path, experiment):
    with open(path, 'w', newline='') as table_file:
        writer = csv.writer(table_file, lineterminator='\n')
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            values = row.as_dict(experiment)
            writer.writerow([format_value(values[column]) for column in CSV_COLUMNS])
    logger.info(f'Wrote {len(rows)} rows to {path}.')
    return path


def _plain(value):
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    return value


def build_manifest(config, constants, row_counts):
    """
    Resolved constants, the config echo, package versions and row counts per experiment.
    """
    return {
        'constants': {name: _plain(value) for name, value in constants.items()},
        'config': config.sections,
        'versions': package_versions(),
        'row_counts': dict(row_counts),
    }


def write_manifest(manifest, output_dir):
    path = os.path.join(output_dir, MANIFEST_FILE)
    with open(path, 'w') as manifest_file:
        yaml.safe_dump(manifest, manifest_file, default_flow_style=False, sort_keys=True)
    return path


def write_timing(wall_seconds, output_dir):
    path = os.path.join(output_dir, TIMING_FILE)
    with open(path, 'w') as timing_file:
        yaml.safe_dump({'wall_seconds': float(wall_seconds)}, timing_file, default_flow_style=False)
    return path
