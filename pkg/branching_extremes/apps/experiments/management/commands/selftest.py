"""
Management command to run the deterministic oracle suite.
"""

from django.core.management.base import BaseCommand, CommandError

from branching_extremes.apps.experiments.constants import EXIT_RUNTIME
from branching_extremes.apps.experiments.oracles import run_oracles


class Command(BaseCommand):
    help = 'Check the numerics against closed forms and identities; exit 2 if any check fails.'

    def handle(self, *args, **options):
        checks = run_oracles()
        width = max(len(check.name) for check in checks)
        for check in checks:
            status = 'ok' if check.passed else 'FAIL'
            self.stdout.write(f'{check.name:<{width}}  {check.error:.3e}  <= {check.tolerance:.0e}  {status}')
        failed = [check for check in checks if not check.passed]
        if failed:
            raise CommandError(f'{len(failed)} of {len(checks)} oracle checks failed.', returncode=EXIT_RUNTIME)
        self.stdout.write(f'All {len(checks)} oracle checks passed.')
