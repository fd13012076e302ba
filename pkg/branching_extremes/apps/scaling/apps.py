"""
Initialization app for branching_extremes.apps.scaling.

"""

from django.apps import AppConfig


class ScalingConfig(AppConfig):
    """
    Application Configuration for the scaling app.
    """

    name = 'branching_extremes.apps.scaling'
