"""
Fixed test-function panels used by the experiments.
"""

from functools import lru_cache

import numpy as np
from django.core.exceptions import ValidationError

from branching_extremes.apps.gw_numerics.data import (
    exp_neg_indicator_above,
    exp_neg_indicator_outside,
    smooth_cutoff
)


@lru_cache(maxsize=None)
def laplace_panel():
    """
    Three test functions equal to 1 on (-0.1, 0.1), each checked against its declared shape.
    """
    return tuple(phi.check() for phi in (
        exp_neg_indicator_above(1.0, 0.5),
        exp_neg_indicator_outside(0.5, 0.25),
        smooth_cutoff(0.1, 1.0, 0.6),
    ))


def check_cutoff(cutoff, panel=None):
    """
    Atoms of N_infinity within ``cutoff`` of 0 are never drawn, so every panel function must
    equal 1 on (-2 cutoff, 2 cutoff).
    """
    panel = laplace_panel() if panel is None else panel
    radius = min(phi.one_radius for phi in panel)
    if 2.0 * cutoff > radius:
        raise ValidationError({
            'n_infinity_cutoff': f'The cutoff {cutoff!r} must be at most {radius / 2.0!r}: the Laplace panel '
                                 f'only equals 1 on (-{radius!r}, {radius!r}).'
        })
    return cutoff


def one_big_jump_function():
    """
    1 on [-1, 1], falling smoothly to 0 at |x| = 2.
    """
    return smooth_cutoff(1.0, 1.0, 1.0)


def _generation_count(n):
    return np.asarray(n, dtype=float)


def _no_branching(n):
    return (np.asarray(n) == 0).astype(float)


def _one(n):
    return np.ones(np.shape(n))


# g(n) for the many-to-one checks, keyed by the label written to the tables.
ANCESTOR_FUNCTIONS = (
    ('one', _one),
    ('no_branching', _no_branching),
    ('generation', _generation_count),
)
