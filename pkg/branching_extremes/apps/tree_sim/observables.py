"""
Point measures and skeleton statistics read off simulated trees.
"""

import logging
import math

import numpy as np
from scipy import stats

from branching_extremes.apps.extremes_stats.data import Estimate, PointMeasure
from branching_extremes.apps.gw_numerics.flows import pgf_flow
from branching_extremes.apps.gw_numerics.generating import rates
from branching_extremes.apps.tree_sim.constants import SMALL_POPULATION_EXPONENT

logger = logging.getLogger(__name__)


def point_measures(snap, a):
    """
    Return (X_t / a, Y_t / a).

    X_t puts a unit atom at every alive leaf position. Y_t puts, for every u in D_t, an atom at
    X_{u,t} with multiplicity Z_t^u, so its total mass is the summed path length of the leaves.
    """
    if not a > 0:
        raise ValueError(f'The scale must be positive, got {a!r}.')
    positions = PointMeasure(locations=snap.positions[snap.alive] / a)
    surviving = snap.surviving
    increments = PointMeasure(
        locations=snap.displacement[surviving] / a,
        multiplicities=snap.descendants[surviving],
    )
    return positions, increments


def m_window(snap, s):
    """
    M_{s,t} = max |X_{u,t}| over particles born by t - s; None when there are none.
    """
    if not 0.0 <= s <= snap.t:
        raise ValueError(f'The window must lie in [0, t], got s={s!r} for t={snap.t!r}.')
    eligible = snap.birth <= snap.t - s
    if not eligible.any():
        return None
    return float(np.abs(snap.displacement[eligible]).max())


def common_horizon(snaps):
    horizons = {snap.t for snap in snaps}
    if len(horizons) != 1:
        raise ValueError(f'Snapshots must share one horizon, got {sorted(horizons)}.')
    return horizons.pop()


def poisson_expectation(g, mean):
    """
    E g(N) for N ~ Poisson(mean), summed over the support up to a 1e-15 tail.
    """
    top = int(stats.poisson.ppf(1.0 - 1e-15, mean)) + 1
    support = np.arange(top + 1)
    values = np.broadcast_to(np.asarray(g(support), dtype=float), support.shape)
    return float(np.dot(stats.poisson.pmf(support, mean), values))


def ancestor_count_sample(snap, g):
    """
    sum_{v in L_t} g(n^v) for one tree.
    """
    generations = snap.leaf_generations
    values = np.broadcast_to(np.asarray(g(generations), dtype=float), generations.shape)
    return float(values.sum())


def ancestor_count_target(g, law, t):
    """
    The many-to-one value e^{lambda t} E g(N_t).

    Along the size-biased spine fissions arrive at rate beta mu, so N_t ~ Poisson(beta mu t);
    with that rate g = 1{n = 0} gives e^{-beta t}, the probability the root is still alive.
    """
    lam, _ = rates(law)
    return math.exp(lam * t) * poisson_expectation(g, law.branching_rate * law.mean * t)


def ancestor_count_stats(snaps, g, law):
    """
    Monte Carlo mean of sum_{v in L_t} g(n^v) against ``ancestor_count_target``.
    """
    t = common_horizon(snaps)
    samples = [ancestor_count_sample(snap, g) for snap in snaps]
    return Estimate.from_samples(samples, target=ancestor_count_target(g, law, t))


def population_checks(snaps, law):
    """
    Skeleton checks on snapshots or summaries at one horizon.

    Returns the mean of e^{-lambda t} Z_t (target 1), the extinction-by-t frequency (target
    F(0, t)) and the small-population statistic P(0 < Z_t < t^3) e^{rho t} t^{-3 rho / lambda},
    which should stay bounded in t; it has no target.
    """
    t = common_horizon(snaps)
    lam, rho = rates(law)
    populations = np.array([snap.z_t for snap in snaps], dtype=float)
    w_hat = np.array([snap.w_hat for snap in snaps], dtype=float)
    small_scale = math.exp(rho * t) * t ** (-SMALL_POPULATION_EXPONENT * rho / lam) if t > 0 else math.nan
    small = (populations > 0) & (populations < t ** SMALL_POPULATION_EXPONENT)
    return {
        'martingale_mean': Estimate.from_samples(w_hat, target=1.0),
        'extinction_frequency': Estimate.from_samples(populations == 0, target=pgf_flow(law, 0.0, t)),
        'small_population': Estimate.from_samples(small, scale=small_scale),
    }
