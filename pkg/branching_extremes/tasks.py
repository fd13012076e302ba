"""
Base task for simulation work.
"""

from celery_utils.logged_task import LoggedTask
from django.conf import settings


class LoggedSimulationTask(LoggedTask):  # pylint: disable=abstract-method
    """
    Shared base task for replication chunks.

    A chunk is a pure function of its seed stream, so replaying it reproduces
    the same failure; tasks are never retried and run under the time limits
    configured for simulation work.
    """
    max_retries = 0
    soft_time_limit = settings.CELERY_TASK_SOFT_TIME_LIMIT
    time_limit = settings.CELERY_TASK_TIME_LIMIT
