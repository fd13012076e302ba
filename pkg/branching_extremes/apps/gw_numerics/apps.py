"""
Initialization app for branching_extremes.apps.gw_numerics.

"""

from django.apps import AppConfig


class GwNumericsConfig(AppConfig):
    """
    Application Configuration for the gw_numerics app.
    """

    name = 'branching_extremes.apps.gw_numerics'
