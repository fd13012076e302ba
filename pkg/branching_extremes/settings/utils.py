import platform
import sys
from os import environ

from django.core.exceptions import ImproperlyConfigured

LOG_LEVEL_VARIABLE = 'BRANCHING_EXTREMES_LOG_LEVEL'


def get_env_setting(setting):
    """ Get the environment setting or raise exception """
    try:
        return environ[setting]
    except KeyError:
        error_msg = "Set the [%s] env variable!" % setting
        raise ImproperlyConfigured(error_msg)


def get_logger_config(logging_env="no_env",
                      debug=False,
                      service_variant='branching-extremes',
                      project_level=None):
    """
    Return the LOGGING dict for a settings module.

    Records go to stderr: stdout carries the tables that print_constants and
    dump_tree write. The project loggers default to INFO (DEBUG when ``debug``)
    and ``BRANCHING_EXTREMES_LOG_LEVEL`` overrides both.
    """
    hostname = platform.node().split(".")[0]
    syslog_format = (
        "[service_variant={service_variant}]"
        "[%(name)s][env:{logging_env}] %(levelname)s "
        "[{hostname}  %(process)d] [%(filename)s:%(lineno)d] "
        "- %(message)s"
    ).format(
        service_variant=service_variant,
        logging_env=logging_env, hostname=hostname
    )
    project_level = environ.get(LOG_LEVEL_VARIABLE) or project_level or ('DEBUG' if debug else 'INFO')

    handlers = ['console']

    def quiet(level):
        return {'handlers': handlers, 'propagate': False, 'level': level}

    return {
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'standard': {
                'format': '%(asctime)s %(levelname)s %(process)d '
                          '[%(name)s] %(filename)s:%(lineno)d - %(message)s',
            },
            'syslog_format': {'format': syslog_format},
        },
        'handlers': {
            'console': {
                'level': 'DEBUG',
                'class': 'logging.StreamHandler',
                'formatter': 'syslog_format' if logging_env != 'no_env' else 'standard',
                'stream': sys.stderr,
            },
        },
        'loggers': {
            'branching_extremes': {'handlers': handlers, 'propagate': True, 'level': project_level},
            'django': quiet('WARNING'),
            'celery': quiet('WARNING'),
            # LoggedTask announces every replication chunk at INFO.
            'celery_utils': quiet('WARNING'),
            'factory': quiet('WARNING'),
            'py.warnings': quiet('WARNING'),
            '': {'handlers': [], 'level': 'WARNING'},
        }
    }
