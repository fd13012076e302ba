"""
Initialization app for branching_extremes.apps.experiments.

"""

from django.apps import AppConfig


class ExperimentsConfig(AppConfig):
    """
    Application Configuration for the experiments app.
    """

    name = 'branching_extremes.apps.experiments'
