"""
Management command to run one experiment config.
"""

import logging

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from branching_extremes.apps.experiments.config import load_config
from branching_extremes.apps.experiments.constants import EXIT_RUNTIME, EXIT_VALIDATION
from branching_extremes.apps.experiments.exceptions import ExperimentConfigError
from branching_extremes.apps.experiments.runner import run_experiment

logger = logging.getLogger(__name__)


def validation_message(error):
    """
    Flatten a config or constructor error into one line per field.
    """
    if isinstance(error, ExperimentConfigError):
        lines = error.field_messages()
        return '\n'.join([error.message] + lines) if lines else error.message
    if hasattr(error, 'error_dict'):
        return '\n'.join(f'{field}: {" ".join(messages)}' for field, messages in sorted(error.message_dict.items()))
    return ' '.join(error.messages)


class Command(BaseCommand):
    """
    Run the experiment described by a YAML config and write its CSV table and manifest.

    Exits with status 1 on validation errors and 2 on runtime failures.
    """
    help = 'Run one experiment config and write <output_dir>/<kind>.csv, manifest.yaml and timing.yaml.'

    def add_arguments(self, parser):
        parser.add_argument('config', help='Path to the experiment YAML config.')
        parser.add_argument(
            '--parallelism',
            action='store',
            dest='parallelism',
            default=None,
            help='Number of replication chunks dispatched at once; overrides the config.',
            type=int,
        )

    def handle(self, *args, **options):
        try:
            config = load_config(options['config'])
            result = run_experiment(config, parallelism=options['parallelism'])
        except (ExperimentConfigError, ValidationError) as error:
            raise CommandError(validation_message(error), returncode=EXIT_VALIDATION) from error
        except Exception as error:  # pylint: disable=broad-except
            raise CommandError(f'Experiment failed: {error}', returncode=EXIT_RUNTIME) from error
        self.stdout.write(f'{config.kind}: {len(result.rows)} rows written to {result.table_path}')
