"""
Monte Carlo estimators confronting simulated trees with their limit laws.

Estimators take TreeSnapshot objects or their TreeSummary reductions at one horizon.
Replications that failed (population cap, rejection budget) are skipped.
"""

import logging
import math

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError
from scipy import stats

from branching_extremes.apps.extremes_stats.constants import (
    INEQUALITY_STANDARD_ERRORS,
    KS_MIN_SAMPLES,
    PROXY_QUANTILES,
    SURVIVAL_BIAS_WARNING,
    Statistics
)
from branching_extremes.apps.extremes_stats.data import Estimate, InequalityCheck, TableRow
from branching_extremes.apps.extremes_stats.exceptions import InsufficientSamplesError
from branching_extremes.apps.gw_numerics.flows import discounted_survival, pgf_flow
from branching_extremes.apps.scaling.constants import NormingKinds, ThresholdKinds, ThresholdRegimes
from branching_extremes.apps.scaling.thresholds import growth_rate_ok, summability_warning
from branching_extremes.apps.stable_motion.sampling import sample_path_max
from branching_extremes.apps.tree_sim.observables import common_horizon, point_measures

logger = logging.getLogger(__name__)


def _usable(snaps):
    return [snap for snap in snaps if getattr(snap, 'failure', None) is None]


def _survivor_maxima(snaps):
    return np.array([snap.r_t for snap in snaps if snap.r_t is not None], dtype=float)


def _log_tail_normalizer(scaling, t, log_level):
    """ log of e^{-lambda t} Lambda^alpha / L(Lambda). """
    return -scaling.lam * t + scaling.alpha * log_level - scaling.spec.log_value_at_log(log_level)


def i_functional(g, nu):
    """
    I(g, nu) = prod_k g(x_k)^{m_k}; 1 for the empty measure.
    """
    if nu.is_empty:
        return 1.0
    return float(np.prod(np.power(g(nu.locations), nu.multiplicities)))


def limit_cdf_rt(bundle, x):
    """
    The limit law of R_t / h(t) under P*: (phi(vartheta* x^{-alpha}) - q) / (1 - q) for x > 0.
    """
    values = np.atleast_1d(np.asarray(x, dtype=float))
    result = np.zeros(values.shape)
    positive = values > 0.0
    if positive.any():
        with np.errstate(divide='ignore'):
            theta = bundle.constants.vartheta_star * values[positive] ** -bundle.alpha
        q = bundle.constants.q
        result[positive] = (np.atleast_1d(bundle.phi(theta)) - q) / (1.0 - q)
    return float(result[0]) if np.ndim(x) == 0 else result


def weak_limit_ks(snaps, scaling, bundle):
    """
    KS distance between the survival-conditioned law of R_t / h(t) and ``limit_cdf_rt``.
    """
    t = common_horizon(snaps)
    ratios = _survivor_maxima(_usable(snaps)) / scaling.h(t)
    if ratios.size == 0:
        raise InsufficientSamplesError(f'No surviving trees at t={t} to compare with the limit law.')
    result = stats.kstest(ratios, lambda x: limit_cdf_rt(bundle, x))
    return Estimate(estimate=result.statistic, stderr=math.nan, samples=ratios.size)


def upper_deviation_target(bundle, threshold, vartheta_star=None):
    """
    The value e^{-lambda t} Lambda^alpha L(Lambda)^{-1} P(R_t > Lambda(t)) approaches.

    For Lambda = x h(t) this is the finite-x limit (1 - phi(vartheta* x^{-alpha})) x^alpha;
    faster thresholds give vartheta*.

    ``vartheta_star`` replaces the constant for the delayed maximum R_{t,delta}.
    """
    vartheta_star = bundle.constants.vartheta_star if vartheta_star is None else vartheta_star
    if threshold.kind == ThresholdKinds.H_MULTIPLE:
        x = threshold.param
        return float((1.0 - bundle.phi(vartheta_star * x ** -bundle.alpha)) * x ** bundle.alpha)
    return vartheta_star


def delayed_vartheta_star(bundle, delay):
    """
    (q1 / alpha) int_0^inf e^{-lambda r} P(Z_{r + delay} > 0) dr.

    Survival to r + delay is survival to r from F(0, delay) particles, so the integral is the
    discounted survival at s = F(0, delay).
    """
    if delay < 0:
        raise ValidationError({'delay': 'The survival delay must be nonnegative.'})
    extinct_by_delay = float(pgf_flow(bundle.law, 0.0, delay))
    integral = float(np.real(discounted_survival(bundle.law, extinct_by_delay)))
    return bundle.stable.q1 / bundle.alpha * integral


def upper_deviation_ratio(snaps, threshold, scaling, bundle, vartheta_star=None):
    """
    e^{-lambda t} Lambda(t)^alpha L(Lambda(t))^{-1} times the frequency of R_t > Lambda(t).
    """
    t = common_horizon(snaps)
    usable = _usable(snaps)
    target = upper_deviation_target(bundle, threshold, vartheta_star)
    if threshold.kind == ThresholdKinds.INFINITE:
        logger.warning(f'Upper deviation at t={t}: the threshold is infinite, no exceedances.')
        return Estimate(estimate=0.0, stderr=0.0, target=target, samples=len(usable), exceedances=0)
    log_level = threshold.log_value(t, scaling)
    level = float(np.exp(log_level))
    hits = np.array([snap.r_t is not None and snap.r_t > level for snap in usable], dtype=bool)
    exceedances = int(hits.sum())
    if exceedances == 0:
        logger.warning(f'Upper deviation at t={t}: no tree exceeded {threshold.label}; the run is underpowered.')
    scale = math.exp(_log_tail_normalizer(scaling, t, log_level))
    return Estimate.from_samples(hits, target=target, scale=scale, exceedances=exceedances)


def pareto_ks_statistic(ratios, alpha):
    """
    KS distance between a sample and the Pareto law 1 - x^{-alpha} on (1, inf).
    """
    ratios = np.asarray(ratios, dtype=float)
    if ratios.size == 0:
        raise InsufficientSamplesError('A KS statistic needs at least one sample.')
    if ratios.size < KS_MIN_SAMPLES:
        logger.warning(f'KS statistic computed from only {ratios.size} samples.')
    return float(stats.kstest(ratios, stats.pareto(alpha).cdf).statistic)


def conditional_pareto_ks(snaps, threshold, scaling, alpha=None):
    """
    KS distance of R_t / Lambda(t) given R_t > Lambda(t) to Pareto(alpha).
    """
    t = common_horizon(snaps)
    alpha = scaling.alpha if alpha is None else alpha
    level = threshold.value(t, scaling)
    maxima = _survivor_maxima(_usable(snaps))
    ratios = maxima[maxima > level] / level
    statistic = pareto_ks_statistic(ratios, alpha)
    return Estimate(estimate=statistic, stderr=math.nan, samples=ratios.size, exceedances=ratios.size)


def lower_deviation_target(bundle):
    """
    A(phi(vartheta*)) / (1 - q).
    """
    return bundle.a_phi_star / (1.0 - bundle.constants.q)


def lower_deviation_ratio(snaps, threshold, scaling, bundle):
    """
    e^{rho (t - r(t))} times the frequency of R_t <= Lambda(t) among trees alive at t.

    Conditioning on survival at t instead of eventual survival biases the estimate by
    q - P(Z_t = 0), which is logged when it is not negligible.
    """
    if threshold.regime == ThresholdRegimes.SUPER:
        raise ValidationError({'threshold': f'{threshold.label} grows faster than h(t); no lower deviation.'})
    if bundle.law.is_binary and not growth_rate_ok(threshold, scaling):
        raise ValidationError({'threshold': f'Binary laws need Lambda(t) > e^(gamma t); {threshold.label} is slower.'})
    summability_warning(threshold, scaling)
    t = common_horizon(snaps)
    maxima = _survivor_maxima(_usable(snaps))
    if maxima.size == 0:
        raise InsufficientSamplesError(f'No surviving trees at t={t} for a lower deviation estimate.')
    below = maxima <= threshold.value(t, scaling)
    bias = bundle.constants.q - pgf_flow(bundle.law, 0.0, t)
    if bias > SURVIVAL_BIAS_WARNING:
        logger.warning(f'Survival at t={t} overstates eventual survival by {bias:.3g}; lower deviation is biased.')
    scale = math.exp(bundle.constants.rho * (t - scaling.r(threshold, t)))
    return Estimate.from_samples(
        below, target=lower_deviation_target(bundle), scale=scale, exceedances=int(below.sum()),
    )


def one_big_jump_sample(snap, g, a):
    """
    |I(g, X_t / a) - I(g, Y_t / a)| for one tree.
    """
    positions, increments = point_measures(snap, a)
    return abs(i_functional(g, positions) - i_functional(g, increments))


def one_big_jump_estimates(samples, t, a, scaling):
    """
    The mean discrepancy and the same mean times e^{-lambda t} a^alpha / L(a).
    """
    if not a > 0:
        raise ValidationError({'a': 'The scale must be positive.'})
    scale = math.exp(_log_tail_normalizer(scaling, t, math.log(a)))
    return Estimate.from_samples(samples), Estimate.from_samples(samples, scale=scale)


def one_big_jump_discrepancy(snaps, g, a, scaling):
    if not a > 0:
        raise ValidationError({'a': 'The scale must be positive.'})
    t = common_horizon(snaps)
    samples = [one_big_jump_sample(snap, g, a) for snap in snaps]
    return one_big_jump_estimates(samples, t, a, scaling)


def as_proxies(snaps_by_t, scaling, growth=None, quantiles=PROXY_QUANTILES):
    """
    Finite-horizon tables for the almost-sure statements.

    Per horizon: quantiles of R_t / H(e^{-lambda t} log t), the frequency of R_t > G(t) for the
    threshold ``growth`` and the median of log(R_t+) / t against lambda / alpha. Trees are
    independent across horizons, so these are distributional proxies only.
    """
    rows = []
    for t in sorted(snaps_by_t):
        usable = _usable(snaps_by_t[t])
        maxima = _survivor_maxima(usable)
        if maxima.size == 0:
            logger.warning(f'No surviving trees at t={t}; skipping almost-sure proxies.')
            continue
        if t > 1:
            normed = maxima / scaling.norming(t, NormingKinds.LIMINF)
            rows.extend(
                TableRow(
                    statistic=Statistics.LIMINF_NORMED_QUANTILE,
                    t=t,
                    x=level,
                    estimate=Estimate(estimate=np.quantile(normed, level), stderr=math.nan, samples=normed.size),
                )
                for level in quantiles
            )
        if growth is not None:
            level = growth.value(t, scaling)
            hits = np.array([snap.r_t is not None and snap.r_t > level for snap in usable], dtype=bool)
            rows.append(TableRow(
                statistic=Statistics.GROWTH_EXCEEDANCE,
                t=t,
                x=growth.param,
                estimate=Estimate.from_samples(hits, exceedances=int(hits.sum())),
            ))
        with np.errstate(divide='ignore'):
            rates = np.log(np.maximum(maxima, 0.0)) / t
        rows.append(TableRow(
            statistic=Statistics.LOG_RATE_MEDIAN,
            t=t,
            estimate=Estimate(
                estimate=np.median(rates), stderr=math.nan, target=scaling.lam / scaling.alpha, samples=rates.size,
            ),
        ))
    return rows


def sup_r_inequality_check(snaps, bundle, x_grid, rng, paths, substeps=None, start_position=0.0):
    """
    Compare P(sup_{s <= t} R_s >= x) with e^{lambda t} P(sup_{s <= t} xi_s >= x) on a grid.

    Both sides are Monte Carlo with the same K-point subdivision of each path; the check
    passes at x when the left side is at most the right side plus three pooled standard errors.
    The reference paths start at ``start_position``, where the trees were rooted.
    """
    t = common_horizon(snaps)
    if not t > 0:
        raise ValidationError({'t': 'The running supremum needs a positive horizon.'})
    usable = _usable(snaps)
    sups = [snap.sup_r_t for snap in usable]
    if any(value is None for value in sups):
        raise ValidationError({'snaps': 'Running suprema were not recorded; simulate with record_sup_path.'})
    sups = np.array(sups, dtype=float)
    substeps = substeps or settings.SUP_PATH_SUBSTEPS
    _, reference = sample_path_max(bundle.stable, t, rng, substeps=substeps, size=paths)
    reference = reference + start_position
    growth = math.exp(bundle.constants.lam * t)
    checks = []
    for x in x_grid:
        left = Estimate.from_samples(sups >= x)
        right = Estimate.from_samples(reference >= x, scale=growth)
        slack = INEQUALITY_STANDARD_ERRORS * math.hypot(left.stderr, right.stderr)
        checks.append(InequalityCheck(x=x, left=left, right=right, holds=left.estimate <= right.estimate + slack))
    return checks
