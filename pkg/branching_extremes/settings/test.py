import tempfile

from branching_extremes.settings.base import *

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': ':memory:',
    },
}

CELERY_BROKER_URL = 'memory://'
CELERY_TASK_ALWAYS_EAGER = True
CELERY_TASK_EAGER_PROPAGATES = True
results_dir = tempfile.TemporaryDirectory()
CELERY_RESULT_BACKEND = f'file://{results_dir.name}'

LOGGING = get_logger_config(debug=True, project_level='WARNING')

# Small trees keep the Monte Carlo tests fast; a breach is a test bug.
SIMULATION_POPULATION_CAP = 200000
EXPERIMENT_PARALLELISM_OVERRIDE = None
