"""
Management command to print the constants a config resolves to.
"""

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from branching_extremes.apps.experiments.config import load_config
from branching_extremes.apps.experiments.constants import EXIT_RUNTIME, EXIT_VALIDATION
from branching_extremes.apps.experiments.exceptions import ExperimentConfigError
from branching_extremes.apps.experiments.management.commands.run_experiment import validation_message
from branching_extremes.apps.extremes_stats.bundle import LimitLawBundle
from branching_extremes.apps.gw_numerics.exceptions import GaltonWatsonNumericsError


class Command(BaseCommand):
    """
    Print lambda, rho, q, vartheta, vartheta*, phi(vartheta*) and A(phi(vartheta*)) for a config.
    """
    help = 'Print the constants resolved from the model section of a config.'

    def add_arguments(self, parser):
        parser.add_argument('config', help='Path to the experiment YAML config.')

    def handle(self, *args, **options):
        try:
            config = load_config(options['config'])
            bundle = LimitLawBundle.from_model(config.law, config.stable, config.scaling())
        except (ExperimentConfigError, ValidationError) as error:
            raise CommandError(validation_message(error), returncode=EXIT_VALIDATION) from error
        except GaltonWatsonNumericsError as error:
            raise CommandError(error.message, returncode=EXIT_RUNTIME) from error
        for name, value in bundle.as_dict().items():
            self.stdout.write(f'{name}\t{value!r}')
