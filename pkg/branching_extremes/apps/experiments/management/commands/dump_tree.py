"""
Management command to dump the particles of one simulated replication.
"""

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from branching_extremes.apps.experiments.config import load_config
from branching_extremes.apps.experiments.constants import EXIT_RUNTIME, EXIT_VALIDATION, ExperimentKinds
from branching_extremes.apps.experiments.exceptions import ExperimentConfigError
from branching_extremes.apps.experiments.management.commands.run_experiment import validation_message
from branching_extremes.apps.experiments.seeding import seed_stream
from branching_extremes.apps.tree_sim.dumps import write_snapshot_dump
from branching_extremes.apps.tree_sim.exceptions import TreeSimulationError
from branching_extremes.apps.tree_sim.simulation import simulate


class Command(BaseCommand):
    """
    Re-simulate one replication of a config from its seed stream and write a tab-separated dump.

    The tree is the one ``run_experiment`` draws for the same replication and horizon.
    """
    help = 'Write one row per particle of replication N at horizon index K of a config.'

    def add_arguments(self, parser):
        parser.add_argument('config', help='Path to the experiment YAML config.')
        parser.add_argument('--replication', type=int, default=0, help='Replication index.')
        parser.add_argument('--horizon-index', type=int, default=0, dest='horizon_index',
                            help='Index into the experiment horizons.')

    def handle(self, *args, **options):
        try:
            config = load_config(options['config'])
        except (ExperimentConfigError, ValidationError) as error:
            raise CommandError(validation_message(error), returncode=EXIT_VALIDATION) from error
        replication, horizon_index = options['replication'], options['horizon_index']
        if not 0 <= replication < config.replications:
            raise CommandError(
                f'Replication must lie in [0, {config.replications}), got {replication}.', returncode=EXIT_VALIDATION,
            )
        if not 0 <= horizon_index < len(config.horizons):
            raise CommandError(
                f'Horizon index must lie in [0, {len(config.horizons)}), got {horizon_index}.',
                returncode=EXIT_VALIDATION,
            )
        rng = seed_stream(config.master_seed, replication, horizon_index)
        try:
            snap = simulate(
                config.model,
                config.horizons[horizon_index],
                rng,
                record_delayed=config.delay,
                record_sup_path=config.kind == ExperimentKinds.SUP_R_CHECK,
                population_cap=config.population_cap,
            )
        except TreeSimulationError as error:
            raise CommandError(error.message, returncode=EXIT_RUNTIME) from error
        write_snapshot_dump(snap, self.stdout)
