"""
Initialization app for branching_extremes.apps.extremes_stats.

"""

from django.apps import AppConfig


class ExtremesStatsConfig(AppConfig):
    """
    Application Configuration for the extremes_stats app.
    """

    name = 'branching_extremes.apps.extremes_stats'
