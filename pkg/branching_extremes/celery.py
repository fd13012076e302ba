"""
Celery application that runs replication chunks.

Start a worker with ``celery -A branching_extremes worker``; the run_experiment
command dispatches to it whenever CELERY_TASK_ALWAYS_EAGER is off.
"""
import os

from celery import Celery

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'branching_extremes.settings.local')

app = Celery('branching_extremes')

# Every Celery setting lives in Django settings under the CELERY_ prefix.
app.config_from_object('django.conf:settings', namespace='CELERY')

app.autodiscover_tasks()
