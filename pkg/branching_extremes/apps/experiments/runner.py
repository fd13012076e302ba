"""
Orchestration of one experiment run: dispatch, merge, reduce, write.
"""

import logging
import os
import time

import attr
from celery import group
from django.conf import settings

from branching_extremes.apps.experiments.constants import ExperimentKinds
from branching_extremes.apps.experiments.exceptions import ExperimentConfigError
from branching_extremes.apps.experiments.models import ExperimentRun
from branching_extremes.apps.experiments.reducers import REDUCERS, ReductionContext
from branching_extremes.apps.experiments.tasks import simulate_replications_task
from branching_extremes.apps.experiments.writers import build_manifest, write_manifest, write_table, write_timing

logger = logging.getLogger(__name__)


@attr.s(frozen=True)
class RunResult:
    run = attr.ib()
    rows = attr.ib()
    table_path = attr.ib()
    manifest_path = attr.ib()


def resolve_parallelism(config, requested=None):
    """
    The environment override wins over the command-line value, which wins over the config.
    """
    override = settings.EXPERIMENT_PARALLELISM_OVERRIDE
    if override not in (None, ''):
        try:
            value = int(override)
        except ValueError:
            value = 0
        if value < 1:
            raise ExperimentConfigError(
                'Invalid parallelism override.', {'BRANCHING_EXTREMES_PARALLELISM': f'Expected a positive integer, '
                                                                                    f'got {override!r}.'},
            )
        return value
    if requested is not None:
        if requested < 1:
            raise ExperimentConfigError('Invalid parallelism.', {'parallelism': 'Must be at least 1.'})
        return requested
    return config.parallelism


def chunk_bounds(replications, parallelism):
    """
    Split [0, replications) into at most ``parallelism`` contiguous, nonempty index ranges.
    """
    chunks = min(parallelism, replications)
    size, extra = divmod(replications, chunks)
    bounds = []
    start = 0
    for chunk in range(chunks):
        stop = start + size + (1 if chunk < extra else 0)
        bounds.append((start, stop))
        start = stop
    return bounds


def collect_observations(config, parallelism):
    """
    Simulate every replication of every horizon and return ``{t: observations}`` in index order.
    """
    if config.kind in ExperimentKinds.DETERMINISTIC:
        return {}
    observations_by_t = {}
    bounds = chunk_bounds(config.replications, parallelism)
    for horizon_index, t in enumerate(config.horizons):
        job = group(
            simulate_replications_task.s(config.sections, horizon_index, start, stop) for start, stop in bounds
        )
        chunks = [result.get() for result in job.apply_async().results]
        merged = [observation for chunk in chunks for observation in chunk]
        merged.sort(key=lambda observation: observation['index'])
        observations_by_t[t] = merged
        logger.info(f'Collected {len(merged)} replications at t={t} from {len(bounds)} chunks.')
    return observations_by_t


def _failure_count(observations_by_t):
    return sum(
        1
        for observations in observations_by_t.values()
        for observation in observations
        if observation['summary']['failure'] is not None
    )


def run_experiment(config, parallelism=None):
    """
    Run ``config`` and write ``<output_dir>/<kind>.csv``, the manifest and the timing file.
    """
    parallelism = resolve_parallelism(config, parallelism)
    if not config.slow_variation.is_unit and config.kind not in ExperimentKinds.DETERMINISTIC:
        logger.warning('Trees are simulated with L = 1; the configured slow variation only enters the normings.')
    run = ExperimentRun.objects.create(
        kind=config.kind,
        master_seed=str(config.master_seed),
        replications=config.replications,
        parallelism=parallelism,
        config=config.sections,
        output_dir=config.output_dir,
    )
    started = time.monotonic()
    try:
        context = ReductionContext.from_config(config)
        observations_by_t = collect_observations(config, parallelism)
        rows = REDUCERS[config.kind](context, observations_by_t)
        os.makedirs(config.output_dir, exist_ok=True)
        table_path = write_table(rows, os.path.join(config.output_dir, f'{config.kind}.csv'), config.kind)
        row_counts = {config.kind: len(rows)}
        constants = context.bundle.as_dict()
        manifest_path = write_manifest(build_manifest(config, constants, row_counts), config.output_dir)
    except Exception as error:
        run.mark_failed(str(error), wall_seconds=time.monotonic() - started)
        logger.exception(f'Experiment run {run.uuid} ({config.kind}) failed.')
        raise
    wall_seconds = time.monotonic() - started
    write_timing(wall_seconds, config.output_dir)
    failures = _failure_count(observations_by_t)
    run.mark_succeeded(constants, row_counts, wall_seconds, failures)
    logger.info(
        f'Experiment run {run.uuid} ({config.kind}) wrote {len(rows)} rows in {wall_seconds:.1f}s '
        f'with {failures} failed replications.'
    )
    return RunResult(run=run, rows=rows, table_path=table_path, manifest_path=manifest_path)
