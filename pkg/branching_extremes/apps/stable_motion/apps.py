"""
Initialization app for branching_extremes.apps.stable_motion.

"""

from django.apps import AppConfig


class StableMotionConfig(AppConfig):
    """
    Application Configuration for the stable_motion app.
    """

    name = 'branching_extremes.apps.stable_motion'
