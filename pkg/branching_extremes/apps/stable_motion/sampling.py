"""
Exact increments of a strictly alpha-stable process.

Draws use the Chambers-Mallows-Stuck transform of a uniform angle and a unit exponential,
which returns S_alpha(1, beta, 0) variates; an increment over a duration s is
s^{1/alpha} sigma times such a draw.
"""

import math

import numpy as np

from branching_extremes.apps.stable_motion.constants import DEFAULT_PATH_SUBSTEPS


def _standard_draws(params, rng, shape):
    angle = rng.uniform(-0.5 * math.pi, 0.5 * math.pi, size=shape)
    if params.alpha == 1.0:
        return np.tan(angle)
    exponential = rng.standard_exponential(size=shape)
    alpha = params.alpha
    skew = params.skewness * math.tan(0.5 * math.pi * alpha)
    shift = math.atan(skew) / alpha
    stretch = (1.0 + skew * skew) ** (0.5 / alpha)
    rotated = alpha * (angle + shift)
    return (
        stretch * np.sin(rotated) / np.cos(angle) ** (1.0 / alpha)
        * (np.cos(angle - rotated) / exponential) ** ((1.0 - alpha) / alpha)
    )


def sample_increment(params, duration, rng, size=None):
    """
    Draw xi_s for the strictly stable process; ``duration`` may be an array of edge lengths.

    Without ``size`` the output takes the shape of ``duration``.
    """
    durations = np.asarray(duration, dtype=float)
    if np.any(durations <= 0.0):
        raise ValueError('Increment durations must be positive.')
    shape = durations.shape if size is None else size
    draws = params.scale * durations ** (1.0 / params.alpha) * _standard_draws(params, rng, shape)
    return float(draws) if np.ndim(draws) == 0 else draws


def sample_path_max(params, duration, rng, substeps=DEFAULT_PATH_SUBSTEPS, size=None):
    """
    Return (xi_s, max_{k <= K} xi_{k s / K}) over ``size`` independent paths.

    The discrete maximum over K equal sub-increments bounds the running supremum from below;
    it includes the starting point, so it is never negative.
    """
    durations = np.asarray(duration, dtype=float)
    shape = durations.shape if size is None else tuple(np.atleast_1d(size))
    pieces = sample_increment(
        params, np.broadcast_to(durations / substeps, shape)[..., None], rng, size=shape + (substeps,),
    )
    partial_sums = np.cumsum(pieces, axis=-1)
    running_max = np.maximum(partial_sums.max(axis=-1), 0.0)
    return partial_sums[..., -1], running_max
