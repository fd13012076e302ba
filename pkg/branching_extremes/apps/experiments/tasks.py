"""
Tasks for the experiments app.
"""

import logging

from celery import shared_task

from branching_extremes.apps.experiments.config import ExperimentConfig
from branching_extremes.apps.experiments.observations import observe_chunk
from branching_extremes.tasks import LoggedSimulationTask

logger = logging.getLogger(__name__)


@shared_task(base=LoggedSimulationTask)
def simulate_replications_task(config_sections, horizon_index, start, stop):
    """
    Simulate replications [start, stop) of one horizon and return their observations in index order.
    """
    config = ExperimentConfig.from_dict(config_sections)
    observations = observe_chunk(config, horizon_index, start, stop)
    logger.info(
        f'Simulated replications {start}..{stop - 1} of {config.kind} '
        f'at t={config.horizons[horizon_index]}.'
    )
    return observations
