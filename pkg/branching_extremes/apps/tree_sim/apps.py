"""
Initialization app for branching_extremes.apps.tree_sim.

"""

from django.apps import AppConfig


class TreeSimConfig(AppConfig):
    """
    Application Configuration for the tree_sim app.
    """

    name = 'branching_extremes.apps.tree_sim'
