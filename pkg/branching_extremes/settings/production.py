from os import environ

import yaml

from branching_extremes.settings.base import *
from branching_extremes.settings.utils import get_env_setting

DEBUG = False

ALLOWED_HOSTS = ['*']

LOGGING = get_logger_config(logging_env=environ.get('BRANCHING_EXTREMES_ENV', 'production'))

# Workers share the experiment runs table.
DATABASES = {
    'default': {
        'ENGINE': environ.get('DB_ENGINE', 'django.db.backends.mysql'),
        'NAME': environ.get('DB_NAME', 'branching_extremes'),
        'USER': environ.get('DB_USER', ''),
        'PASSWORD': environ.get('DB_PASSWORD', ''),
        'HOST': environ.get('DB_HOST', ''),
        'PORT': environ.get('DB_PORT', ''),
    }
}

EXPERIMENT_DEFAULT_PARALLELISM = int(environ.get('BRANCHING_EXTREMES_WORKERS', '8'))

# Dict settings in the YAML file update the base values instead of replacing them.
DICT_UPDATE_KEYS = ('CELERY_BROKER_TRANSPORT_OPTIONS',)

if 'BRANCHING_EXTREMES_CFG' in environ:
    with open(get_env_setting('BRANCHING_EXTREMES_CFG'), encoding='utf-8') as f:
        config_from_yaml = yaml.safe_load(f) or {}

    for key in DICT_UPDATE_KEYS:
        value = config_from_yaml.pop(key, None)
        if value:
            vars()[key].update(value)

    vars().update(config_from_yaml)

CELERY_WORKER_HIJACK_ROOT_LOGGER = False
CELERY_BROKER_URL = '{}://{}:{}@{}/{}'.format(
    CELERY_BROKER_TRANSPORT,
    CELERY_BROKER_USER,
    CELERY_BROKER_PASSWORD,
    CELERY_BROKER_HOSTNAME,
    CELERY_BROKER_VHOST
)
