"""
Exact samplers of the limiting random measures.

N_infinity is the Cox cluster process with random intensity vartheta W v_alpha and i.i.d.
integer marks distributed as T; only atoms with |x| > cutoff are realized. Xi superposes
K independent copies of N_infinity conditioned on W > 0 and on having no atom in (1, inf).
"""

import logging

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from branching_extremes.apps.extremes_stats.data import PointMeasure
from branching_extremes.apps.extremes_stats.exceptions import RejectionBudgetExhausted

logger = logging.getLogger(__name__)


def _draw_index(cdf, rng, size=None):
    return np.minimum(np.searchsorted(cdf, rng.random(size), side='right'), cdf.size - 1)


def sample_n_infinity(bundle, w, rng, cutoff=None):
    """
    Draw the atoms of N_infinity beyond ``cutoff`` given the martingale value W = ``w``.
    """
    cutoff = settings.N_INFINITY_CUTOFF if cutoff is None else cutoff
    if not cutoff > 0:
        raise ValidationError({'cutoff': 'The N_infinity cutoff must be positive.'})
    if w < 0:
        raise ValidationError({'w': 'W is nonnegative.'})
    if w == 0:
        return PointMeasure.empty()
    stable = bundle.stable
    alpha = stable.alpha
    total_weight = stable.q1 + stable.q2
    mean = bundle.constants.vartheta * w * total_weight * cutoff ** -alpha / alpha
    count = rng.poisson(mean)
    # v_alpha restricted to |x| > cutoff has Pareto magnitudes cutoff * U^{-1/alpha}.
    magnitudes = cutoff * (1.0 - rng.random(count)) ** (-1.0 / alpha)
    signs = np.where(rng.random(count) < stable.q1 / total_weight, 1.0, -1.0)
    marks = _draw_index(bundle.t_cdf(), rng, count) + 1
    return PointMeasure(locations=signs * magnitudes, multiplicities=marks)


def _conditioned_component(bundle, rng, cutoff, budget):
    for _ in range(budget):
        w = float(bundle.sample_w(rng))
        if w <= 0.0:
            continue
        component = sample_n_infinity(bundle, w, rng, cutoff)
        if component.mass_above(1.0) == 0:
            return component
    raise RejectionBudgetExhausted(budget, 'N_infinity component with W > 0 and no atom above 1')


def sample_xi(bundle, rng, cutoff=None, budget=None):
    """
    Draw Xi = sum_{k <= K} of conditioned N_infinity components.
    """
    budget = settings.XI_REJECTION_BUDGET if budget is None else budget
    clusters = int(_draw_index(bundle.cluster_count_cdf(), rng)) + 1
    xi = PointMeasure.empty()
    for _ in range(clusters):
        xi = xi + _conditioned_component(bundle, rng, cutoff, budget)
    return xi
