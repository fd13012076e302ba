"""
Runtime sanity checks of deviation thresholds against their declared regimes.
"""

import logging
import math

import numpy as np
from django.core.exceptions import ValidationError
from scipy.special import logsumexp

from branching_extremes.apps.scaling.constants import (
    REGIME_CHECK_HORIZONS,
    REGIME_CHECK_SLACK,
    SUMMABILITY_TAIL_FRACTION,
    SUMMABILITY_TERMS,
    ThresholdKinds,
    ThresholdRegimes
)

logger = logging.getLogger(__name__)


def _log_ratio_profile(threshold, scaling, horizons):
    return np.array([threshold.log_value(t, scaling) - scaling.log_h(t) for t in horizons])


def check_regime(threshold, scaling, horizons=None):
    """
    Raise ValidationError when Lambda(t) / h(t) contradicts the declared regime on a grid.
    """
    horizons = np.linspace(*REGIME_CHECK_HORIZONS) if horizons is None else np.asarray(horizons, dtype=float)
    if threshold.kind == ThresholdKinds.INFINITE:
        return threshold
    log_values = np.array([threshold.log_value(t, scaling) for t in horizons])
    if threshold.monotone and np.any(np.diff(log_values) < -REGIME_CHECK_SLACK):
        raise ValidationError({'threshold': f'{threshold.label} is declared monotone but decreases.'})
    profile = _log_ratio_profile(threshold, scaling, horizons)
    steps = np.diff(profile)
    consistent = {
        ThresholdRegimes.SUPER: np.all(steps > -REGIME_CHECK_SLACK) and profile[-1] > profile[0],
        ThresholdRegimes.SUB: np.all(steps < REGIME_CHECK_SLACK) and profile[-1] < profile[0],
        ThresholdRegimes.CRITICAL: np.all(np.abs(steps) <= REGIME_CHECK_SLACK * max(1.0, np.abs(profile).max())),
        None: True,
    }[threshold.regime]
    if not consistent:
        raise ValidationError({
            'regime': f'{threshold.label} does not behave as declared ({threshold.regime}) relative to h(t).'
        })
    return threshold


def growth_rate_ok(threshold, scaling, horizons=None):
    """
    Whether Lambda(t) > e^{gamma t} for some gamma > 0 on the grid, as binary laws require.
    """
    horizons = np.linspace(*REGIME_CHECK_HORIZONS) if horizons is None else np.asarray(horizons, dtype=float)
    rates = np.array([threshold.log_value(t, scaling) / t for t in horizons if t > 0])
    return bool(rates.size) and float(rates.min()) > 0.0


def summability_warning(threshold, scaling, terms=SUMMABILITY_TERMS):
    """
    Partial-sum heuristic for sum_n n Lambda(n)^{-alpha} L(Lambda(n)) < infinity.

    Returns True when the last half of the partial sum is negligible; logs a warning otherwise.
    This is a heuristic, not a proof.
    """
    if threshold.kind == ThresholdKinds.INFINITE:
        return True
    indices = np.arange(1, terms + 1, dtype=float)
    log_thresholds = np.array([threshold.log_value(n, scaling) for n in indices])
    log_terms = np.log(indices) - scaling.alpha * log_thresholds + scaling.spec.log_value_at_log(log_thresholds)
    total = logsumexp(log_terms)
    tail = logsumexp(log_terms[terms // 2:])
    fraction = math.exp(tail - total)
    if fraction > SUMMABILITY_TAIL_FRACTION:
        logger.warning(
            f'Sum of n Lambda(n)^(-alpha) L(Lambda(n)) for {threshold.label} still grows at n={terms} '
            f'(last half carries {fraction:.3g} of the partial sum).'
        )
        return False
    return True
