"""
Per-replication observations computed inside the workers.

An observation is a JSON-serialisable dict ``{'index', 'summary', 'extras'}``: the tree summary
plus whatever per-tree values the experiment kind reduces later. Trees never leave the worker.
"""

import logging
import math

from branching_extremes.apps.experiments.constants import DEFAULT_SUB_THRESHOLD_PARAM, ExperimentKinds
from branching_extremes.apps.experiments.panels import ANCESTOR_FUNCTIONS, laplace_panel, one_big_jump_function
from branching_extremes.apps.experiments.seeding import seed_stream
from branching_extremes.apps.extremes_stats.estimators import i_functional, one_big_jump_sample
from branching_extremes.apps.scaling.data import exponential
from branching_extremes.apps.tree_sim.constants import SnapshotFailures
from branching_extremes.apps.tree_sim.data import TreeSummary
from branching_extremes.apps.tree_sim.exceptions import PopulationCapExceeded
from branching_extremes.apps.tree_sim.observables import ancestor_count_sample, m_window, point_measures
from branching_extremes.apps.tree_sim.simulation import simulate

logger = logging.getLogger(__name__)


def xi_threshold(config):
    return config.threshold_or(exponential(DEFAULT_SUB_THRESHOLD_PARAM))


def _one_big_jump_extras(config, scaling, snap):
    a = math.exp(config.norming_rate * snap.t)
    return {'discrepancy': one_big_jump_sample(snap, one_big_jump_function(), a)}


def _n_infinity_extras(config, scaling, snap):
    positions, _ = point_measures(snap, scaling.h(snap.t))
    return {'laplace': [i_functional(phi, positions) for phi in laplace_panel()]}


def _xi_extras(config, scaling, snap):
    level = xi_threshold(config).value(snap.t, scaling)
    positions, _ = point_measures(snap, level)
    return {
        'laplace': [i_functional(phi.capped_above(1.0), positions) for phi in laplace_panel()],
        'below': snap.r_t is not None and snap.r_t <= level,
    }


def _skeleton_extras(config, scaling, snap):
    return {'ancestors': [ancestor_count_sample(snap, g) for _, g in ANCESTOR_FUNCTIONS]}


def _window_extras(config, scaling, snap):
    return {'window_maxima': [m_window(snap, s) if s <= snap.t else None for s in config.windows]}


EXTRAS = {
    ExperimentKinds.ONE_BIG_JUMP: _one_big_jump_extras,
    ExperimentKinds.N_INFINITY_COMPARE: _n_infinity_extras,
    ExperimentKinds.XI_COMPARE: _xi_extras,
    ExperimentKinds.SKELETON_CHECKS: _skeleton_extras,
    ExperimentKinds.WINDOW_MAXIMA: _window_extras,
}


def observe_replication(config, horizon_index, index, scaling=None):
    """
    Simulate replication ``index`` at the horizon ``config.horizons[horizon_index]``.

    A tree that outgrows the population cap is reported as a failed replication.
    """
    t = config.horizons[horizon_index]
    scaling = scaling or config.scaling()
    rng = seed_stream(config.master_seed, index, horizon_index)
    try:
        snap = simulate(
            config.model,
            t,
            rng,
            record_delayed=config.delay,
            record_sup_path=config.kind == ExperimentKinds.SUP_R_CHECK,
            population_cap=config.population_cap,
        )
    except PopulationCapExceeded as error:
        logger.warning(f'Replication {index} at t={t} failed: {error.message}')
        summary = TreeSummary.failed_replication(t, SnapshotFailures.POPULATION_CAP)
        return {'index': index, 'summary': summary.to_dict(), 'extras': {}}
    extras = EXTRAS.get(config.kind)
    return {
        'index': index,
        'summary': snap.summary().to_dict(),
        'extras': extras(config, scaling, snap) if extras else {},
    }


def observe_chunk(config, horizon_index, start, stop):
    scaling = config.scaling()
    return [observe_replication(config, horizon_index, index, scaling) for index in range(start, stop)]
