"""
Reducers turning merged observations into result rows, one per experiment kind.

Every reducer takes the ReductionContext and ``{t: [observation, ...]}`` with observations in
replication order, and returns a list of TableRow.
"""

import logging
import math

import attr
import numpy as np
from django.core.exceptions import ValidationError

from branching_extremes.apps.experiments.constants import (
    DEFAULT_PARETO_MULTIPLE,
    DEFAULT_SUB_THRESHOLD_PARAM,
    GW_TABLE_SIZE,
    ExperimentKinds,
    RandomStreams,
    TableStatistics
)
from branching_extremes.apps.experiments.observations import xi_threshold
from branching_extremes.apps.experiments.panels import ANCESTOR_FUNCTIONS, laplace_panel
from branching_extremes.apps.experiments.seeding import seed_stream
from branching_extremes.apps.extremes_stats.bundle import LimitLawBundle
from branching_extremes.apps.extremes_stats.constants import Statistics
from branching_extremes.apps.extremes_stats.data import Estimate, TableRow
from branching_extremes.apps.extremes_stats.estimators import (
    as_proxies,
    conditional_pareto_ks,
    delayed_vartheta_star,
    i_functional,
    limit_cdf_rt,
    lower_deviation_ratio,
    one_big_jump_estimates,
    sup_r_inequality_check,
    upper_deviation_ratio,
    weak_limit_ks
)
from branching_extremes.apps.extremes_stats.exceptions import InsufficientSamplesError, RejectionBudgetExhausted
from branching_extremes.apps.extremes_stats.laplace import n_infinity_laplace_target, xi_laplace_target
from branching_extremes.apps.extremes_stats.samplers import sample_n_infinity, sample_xi
from branching_extremes.apps.gw_numerics.coefficients import t_law_pmf_by_extraction, z_pmf
from branching_extremes.apps.gw_numerics.exceptions import CoefficientExtractionError
from branching_extremes.apps.gw_numerics.flows import a_of_phi_integral, pgf_flow
from branching_extremes.apps.scaling.constants import ThresholdRegimes
from branching_extremes.apps.scaling.data import exponential, h_multiple
from branching_extremes.apps.tree_sim.data import TreeSummary
from branching_extremes.apps.tree_sim.observables import ancestor_count_target, population_checks

logger = logging.getLogger(__name__)


@attr.s(frozen=True)
class ReductionContext:
    """
    The config with the scaling context and limit-law bundle resolved from it.
    """

    config = attr.ib()
    scaling = attr.ib()
    bundle = attr.ib()

    @classmethod
    def from_config(cls, config):
        scaling = config.scaling()
        bundle = LimitLawBundle.from_model(config.law, config.stable, scaling)
        return cls(config=config, scaling=scaling, bundle=bundle)

    def rng(self, stream):
        return seed_stream(self.config.master_seed, 0, 0, stream)


def _summaries(observations):
    return [TreeSummary.from_dict(observation['summary']) for observation in observations]


def _usable(observations):
    return [observation for observation in observations if observation['summary']['failure'] is None]


def _failures(observations):
    return len(observations) - len(_usable(observations))


def _value_row(statistic, value, t=math.nan, x=math.nan, target=None):
    return TableRow(statistic=statistic, t=t, x=x, estimate=Estimate(estimate=value, stderr=0.0, target=target))


def _unavailable(statistic, t, x, failures, reason):
    logger.warning(f'{statistic} at t={t}, x={x}: {reason}')
    return TableRow(
        statistic=statistic, t=t, x=x, estimate=Estimate(estimate=math.nan, stderr=math.nan), failures=failures,
    )


def reduce_gw_tables(context, observations_by_t):
    """
    Constants, the law of T by two routes, the cluster count law and P(Z_t = k) per horizon.
    """
    bundle = context.bundle
    law = bundle.law
    rows = [
        _value_row(f'{TableStatistics.GW_CONSTANT_PREFIX}{name}', value)
        for name, value in bundle.as_dict().items()
    ]
    rows.append(_value_row(
        TableStatistics.A_PHI_STAR,
        float(a_of_phi_integral(law, bundle.constants.vartheta_star)),
        target=bundle.a_phi_star,
    ))
    resolvent = bundle.t_table()
    extracted = t_law_pmf_by_extraction(law, GW_TABLE_SIZE)
    rows.extend(
        _value_row(TableStatistics.T_LAW, float(extracted[k - 1]), x=k, target=float(resolvent[k - 1]))
        for k in range(1, min(GW_TABLE_SIZE, resolvent.size) + 1)
    )
    # E T may be infinite; the truncated mean is reported for inspection only.
    support = np.arange(1, resolvent.size + 1)
    rows.append(_value_row(TableStatistics.T_LAW_MASS, float(resolvent.sum()), target=1.0))
    rows.append(_value_row(TableStatistics.T_LAW_MEAN, float(np.dot(support, resolvent)), x=resolvent.size))
    cluster = bundle.cluster_count_pmf()
    rows.extend(
        _value_row(TableStatistics.CLUSTER_COUNT, float(cluster[k - 1]), x=k)
        for k in range(1, min(GW_TABLE_SIZE, cluster.size) + 1)
    )
    for t in context.config.horizons:
        try:
            pmf = z_pmf(law, t, GW_TABLE_SIZE)
        except CoefficientExtractionError as error:
            logger.warning(f'Skipping P(Z_t = k) at t={t}: {error.message}')
            continue
        extinct = float(pgf_flow(law, 0.0, t))
        rows.extend(
            _value_row(TableStatistics.Z_PMF, float(pmf[k]), t=t, x=k, target=extinct if k == 0 else None)
            for k in range(GW_TABLE_SIZE + 1)
        )
    return rows


def reduce_weak_limit(context, observations_by_t):
    rows = []
    for t, observations in sorted(observations_by_t.items()):
        failures = _failures(observations)
        summaries = _summaries(observations)
        try:
            ks = weak_limit_ks(summaries, context.scaling, context.bundle)
        except InsufficientSamplesError as error:
            rows.append(_unavailable(Statistics.WEAK_LIMIT_KS, t, math.nan, failures, error.message))
            continue
        rows.append(TableRow(statistic=Statistics.WEAK_LIMIT_KS, t=t, estimate=ks, failures=failures))
        h = context.scaling.h(t)
        ratios = np.array([s.r_t / h for s in summaries if s.failure is None and s.r_t is not None])
        for x in context.config.x_grid:
            rows.append(TableRow(
                statistic=Statistics.LIMIT_CDF,
                t=t,
                x=x,
                estimate=Estimate.from_samples(ratios <= x, target=limit_cdf_rt(context.bundle, x)),
                failures=failures,
            ))
    return rows


def _upper_thresholds(config):
    if config.threshold is not None:
        return [config.threshold]
    return [h_multiple(x) for x in config.x_grid]


def reduce_upper_deviation(context, observations_by_t):
    """
    Normalized P(R_t > Lambda(t)), and the same for R_{t,delta} when a delay is configured.
    """
    config = context.config
    delayed_constant = delayed_vartheta_star(context.bundle, config.delay) if config.delay > 0 else None
    rows = []
    for t, observations in sorted(observations_by_t.items()):
        failures = _failures(observations)
        summaries = _summaries(observations)
        delayed = [attr.evolve(summary, r_t=summary.r_t_delayed) for summary in summaries]
        for threshold in _upper_thresholds(config):
            rows.append(TableRow(
                statistic=Statistics.UPPER_DEVIATION,
                t=t,
                x=threshold.param,
                estimate=upper_deviation_ratio(summaries, threshold, context.scaling, context.bundle),
                failures=failures,
            ))
            if delayed_constant is not None:
                rows.append(TableRow(
                    statistic=TableStatistics.UPPER_DEVIATION_DELAYED,
                    t=t,
                    x=threshold.param,
                    estimate=upper_deviation_ratio(
                        delayed, threshold, context.scaling, context.bundle, vartheta_star=delayed_constant,
                    ),
                    failures=failures,
                ))
    return rows


def reduce_pareto_conditional(context, observations_by_t):
    threshold = context.config.threshold_or(h_multiple(DEFAULT_PARETO_MULTIPLE))
    rows = []
    for t, observations in sorted(observations_by_t.items()):
        failures = _failures(observations)
        try:
            estimate = conditional_pareto_ks(_summaries(observations), threshold, context.scaling)
        except InsufficientSamplesError as error:
            rows.append(_unavailable(Statistics.PARETO_KS, t, threshold.param, failures, error.message))
            continue
        rows.append(TableRow(statistic=Statistics.PARETO_KS, t=t, x=threshold.param, estimate=estimate,
                             failures=failures))
    return rows


def reduce_lower_deviation(context, observations_by_t):
    threshold = context.config.threshold_or(exponential(DEFAULT_SUB_THRESHOLD_PARAM))
    rows = []
    for t, observations in sorted(observations_by_t.items()):
        failures = _failures(observations)
        try:
            estimate = lower_deviation_ratio(_summaries(observations), threshold, context.scaling, context.bundle)
        except InsufficientSamplesError as error:
            rows.append(_unavailable(Statistics.LOWER_DEVIATION, t, threshold.param, failures, error.message))
            continue
        rows.append(TableRow(statistic=Statistics.LOWER_DEVIATION, t=t, x=threshold.param, estimate=estimate,
                             failures=failures))
    return rows


def reduce_one_big_jump(context, observations_by_t):
    rate = context.config.norming_rate
    rows = []
    for t, observations in sorted(observations_by_t.items()):
        failures = _failures(observations)
        samples = [observation['extras']['discrepancy'] for observation in _usable(observations)]
        raw, normalized = one_big_jump_estimates(samples, t, math.exp(rate * t), context.scaling)
        rows.append(TableRow(statistic=Statistics.ONE_BIG_JUMP, t=t, x=rate, estimate=raw, failures=failures))
        rows.append(TableRow(statistic=Statistics.ONE_BIG_JUMP_NORMALIZED, t=t, x=rate, estimate=normalized,
                             failures=failures))
    return rows


def _laplace_columns(observations):
    values = [observation['extras']['laplace'] for observation in observations]
    return np.array(values, dtype=float).reshape(len(values), len(laplace_panel()))


def _n_infinity_bundle(context, observations_by_t):
    bundle = context.bundle
    if bundle.has_exact_w_law:
        return bundle
    largest = max(observations_by_t)
    w_values = [summary.w_hat for summary in _summaries(_usable(observations_by_t[largest]))]
    logger.info(f'Using {len(w_values)} simulated W values from t={largest} for the N_infinity sampler.')
    return bundle.with_w_values(w_values)


def reduce_n_infinity(context, observations_by_t):
    """
    The Laplace functional of X_t / h(t) against its limit, plus that of sampled N_infinity.
    """
    config = context.config
    panel = laplace_panel()
    targets = [n_infinity_laplace_target(context.bundle, phi) for phi in panel]
    rows = []
    for t, observations in sorted(observations_by_t.items()):
        usable = _usable(observations)
        columns = _laplace_columns(usable)
        rows.extend(
            TableRow(
                statistic=TableStatistics.N_INFINITY_EMPIRICAL,
                t=t,
                x=j,
                estimate=Estimate.from_samples(columns[:, j], target=targets[j]),
                failures=len(observations) - len(usable),
            )
            for j in range(len(panel))
        )
    bundle = _n_infinity_bundle(context, observations_by_t)
    rng = context.rng(RandomStreams.LIMIT_SAMPLES)
    measures = [
        sample_n_infinity(bundle, float(bundle.sample_w(rng)), rng, config.n_infinity_cutoff)
        for _ in range(config.sample_count)
    ]
    rows.extend(
        TableRow(
            statistic=TableStatistics.N_INFINITY_SAMPLED,
            t=math.nan,
            x=j,
            estimate=Estimate.from_samples([i_functional(phi, nu) for nu in measures], target=targets[j]),
        )
        for j, phi in enumerate(panel)
    )
    return rows


def reduce_xi(context, observations_by_t):
    """
    X_t / Lambda(t) on {R_t <= Lambda(t)} against Xi, and the unconditional lower-deviation form.

    Only trees alive at t enter, as a proxy for conditioning on survival.
    """
    config = context.config
    bundle = context.bundle
    threshold = xi_threshold(config)
    if threshold.regime == ThresholdRegimes.SUPER:
        raise ValidationError({'threshold': f'{threshold.label} grows faster than h(t); Xi needs a slower threshold.'})
    panel = laplace_panel()
    targets = [xi_laplace_target(bundle, phi) for phi in panel]
    survival = 1.0 - bundle.constants.q
    unconditional_targets = [target * bundle.a_phi_star / survival for target in targets]
    rows = []
    for t, observations in sorted(observations_by_t.items()):
        failures = _failures(observations)
        alive = [observation for observation in _usable(observations) if observation['summary']['z_t'] > 0]
        columns = _laplace_columns(alive)
        below = np.array([observation['extras']['below'] for observation in alive], dtype=bool)
        scale = math.exp(bundle.constants.rho * (t - context.scaling.r(threshold, t)))
        for j in range(len(panel)):
            rows.append(TableRow(
                statistic=TableStatistics.XI_CONDITIONAL,
                t=t,
                x=j,
                estimate=Estimate.from_samples(columns[below, j], target=targets[j]),
                failures=failures,
            ))
            rows.append(TableRow(
                statistic=TableStatistics.XI_UNCONDITIONAL,
                t=t,
                x=j,
                estimate=Estimate.from_samples(columns[:, j], target=unconditional_targets[j], scale=scale),
                failures=failures,
            ))
    bundle = _n_infinity_bundle(context, observations_by_t)
    rng = context.rng(RandomStreams.LIMIT_SAMPLES)
    measures = []
    rejected = 0
    for _ in range(config.sample_count):
        try:
            measures.append(sample_xi(bundle, rng, cutoff=config.n_infinity_cutoff))
        except RejectionBudgetExhausted as error:
            logger.warning(error.message)
            rejected += 1
    rows.extend(
        TableRow(
            statistic=TableStatistics.XI_SAMPLED,
            t=math.nan,
            x=j,
            estimate=Estimate.from_samples([i_functional(phi, nu) for nu in measures], target=targets[j]),
            failures=rejected,
        )
        for j, phi in enumerate(panel)
    )
    return rows


def reduce_as_proxies(context, observations_by_t):
    summaries_by_t = {t: _summaries(observations) for t, observations in observations_by_t.items()}
    failures = {t: _failures(observations) for t, observations in observations_by_t.items()}
    rows = as_proxies(summaries_by_t, context.scaling, growth=context.config.growth)
    return [attr.evolve(row, failures=failures[row.t]) for row in rows]


def reduce_sup_r(context, observations_by_t):
    """
    P(sup R >= x h(t)) against e^{lambda t} P(sup xi >= x h(t)) for every multiple x of the grid.
    """
    config = context.config
    rng = context.rng(RandomStreams.REFERENCE_PATHS)
    rows = []
    for t, observations in sorted(observations_by_t.items()):
        failures = _failures(observations)
        h = context.scaling.h(t)
        levels = [x * h for x in config.x_grid]
        checks = sup_r_inequality_check(
            _summaries(observations), context.bundle, levels, rng, config.sample_count,
            start_position=config.model.start_position,
        )
        for x, check in zip(config.x_grid, checks):
            left = attr.evolve(check.left, target=check.right.estimate)
            rows.append(TableRow(statistic=Statistics.SUP_R, t=t, x=x, estimate=left, failures=failures))
            rows.append(TableRow(statistic=Statistics.SUP_XI_BOUND, t=t, x=x, estimate=check.right))
            rows.append(TableRow(
                statistic=TableStatistics.SUP_R_HOLDS,
                t=t,
                x=x,
                estimate=Estimate(estimate=float(check.holds), stderr=0.0, target=1.0),
            ))
    return rows


def reduce_skeleton(context, observations_by_t):
    law = context.bundle.law
    rows = []
    for t, observations in sorted(observations_by_t.items()):
        failures = _failures(observations)
        usable = _usable(observations)
        columns = np.array([observation['extras']['ancestors'] for observation in usable], dtype=float)
        columns = columns.reshape(len(usable), len(ANCESTOR_FUNCTIONS))
        for j, (label, g) in enumerate(ANCESTOR_FUNCTIONS):
            rows.append(TableRow(
                statistic=f'{TableStatistics.MANY_TO_ONE_PREFIX}{label}',
                t=t,
                estimate=Estimate.from_samples(columns[:, j], target=ancestor_count_target(g, law, t)),
                failures=failures,
            ))
        checks = population_checks(_summaries(usable), law)
        for statistic, key in (
            (TableStatistics.MARTINGALE_MEAN, 'martingale_mean'),
            (TableStatistics.EXTINCTION_FREQUENCY, 'extinction_frequency'),
            (TableStatistics.SMALL_POPULATION, 'small_population'),
        ):
            rows.append(TableRow(statistic=statistic, t=t, estimate=checks[key], failures=failures))
    return rows


def reduce_window_maxima(context, observations_by_t):
    """
    e^{-lambda t} a^alpha L(a)^{-1} P(M_{s,t} > a) at a = max(x_grid) h(t) for every window s.
    """
    config = context.config
    multiple = max(config.x_grid)
    rows = []
    for t, observations in sorted(observations_by_t.items()):
        failures = _failures(observations)
        usable = _usable(observations)
        a = multiple * context.scaling.h(t)
        scale = math.exp(-context.scaling.lam * t) * context.scaling.tail_normalizer(a)
        for j, s in enumerate(config.windows):
            if s > t:
                continue
            maxima = [observation['extras']['window_maxima'][j] for observation in usable]
            hits = [value is not None and value > a for value in maxima]
            rows.append(TableRow(
                statistic=TableStatistics.WINDOW_EXCEEDANCE,
                t=t,
                x=s,
                estimate=Estimate.from_samples(hits, scale=scale, exceedances=sum(hits)),
                failures=failures,
            ))
    return rows


REDUCERS = {
    ExperimentKinds.GW_TABLES: reduce_gw_tables,
    ExperimentKinds.WEAK_LIMIT_RT: reduce_weak_limit,
    ExperimentKinds.UPPER_DEVIATION: reduce_upper_deviation,
    ExperimentKinds.PARETO_CONDITIONAL: reduce_pareto_conditional,
    ExperimentKinds.LOWER_DEVIATION: reduce_lower_deviation,
    ExperimentKinds.ONE_BIG_JUMP: reduce_one_big_jump,
    ExperimentKinds.N_INFINITY_COMPARE: reduce_n_infinity,
    ExperimentKinds.XI_COMPARE: reduce_xi,
    ExperimentKinds.AS_PROXIES: reduce_as_proxies,
    ExperimentKinds.SUP_R_CHECK: reduce_sup_r,
    ExperimentKinds.SKELETON_CHECKS: reduce_skeleton,
    ExperimentKinds.WINDOW_MAXIMA: reduce_window_maxima,
}
