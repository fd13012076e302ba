"""
Forward simulation of a branching Levy process up to a horizon t.

The tree is grown one generation at a time in struct-of-arrays form: particle i of the
snapshot has parent ``parent[i]`` (-1 for the root), lives on [birth[i], end[i]] with
end = min(sigma_u, t), and is displaced by one stable increment over that edge. Parents
always precede their children, so descendant counts accumulate in a single backward pass.
"""

import logging
import math

import numpy as np
from django.conf import settings
from django.core.exceptions import ValidationError

from branching_extremes.apps.gw_numerics.flows import survival_prob
from branching_extremes.apps.gw_numerics.generating import rates
from branching_extremes.apps.stable_motion.sampling import sample_increment, sample_path_max
from branching_extremes.apps.tree_sim.data import ParticleRecord, TreeSummary
from branching_extremes.apps.tree_sim.exceptions import PopulationCapExceeded

logger = logging.getLogger(__name__)


def _frozen(array):
    array.setflags(write=False)
    return array


def _maximum(values):
    return float(values.max()) if values.size else None


class TreeSnapshot:
    """
    One simulated tree at horizon t. Arrays are read-only; statistics are derived on demand.
    """

    def __init__(self, t, model, columns, generation_offsets, delay=0.0, delayed=None):
        self.t = float(t)
        self.model = model
        self.parent = _frozen(columns['parent'])
        self.child_index = _frozen(columns['child_index'])
        self.generation = _frozen(columns['generation'])
        self.birth = _frozen(columns['birth'])
        self.end = _frozen(columns['end'])
        self.start = _frozen(columns['start'])
        self.displacement = _frozen(columns['displacement'])
        self.alive = _frozen(columns['alive'])
        self.edge_max = None if columns.get('edge_max') is None else _frozen(columns['edge_max'])
        self.generation_offsets = tuple(generation_offsets)
        self.delay = float(delay)
        self.delayed = None if delayed is None else _frozen(delayed)
        self.descendants = _frozen(self._accumulate(self.alive))
        self.delayed_descendants = None if delayed is None else _frozen(self._accumulate(self.delayed))
        self._particles = None

    def _accumulate(self, leaf_flags):
        counts = leaf_flags.astype(np.int64)
        offsets = self.generation_offsets
        for generation in range(len(offsets) - 2, 0, -1):
            members = slice(offsets[generation], offsets[generation + 1])
            np.add.at(counts, self.parent[members], counts[members])
        return counts

    @property
    def size(self):
        return int(self.parent.size)

    @property
    def positions(self):
        return self.start + self.displacement

    @property
    def surviving(self):
        """ Membership in D_t: particles with an alive descendant at t. """
        return self.descendants > 0

    @property
    def z_t(self):
        return int(self.alive.sum())

    @property
    def r_t(self):
        return _maximum(self.positions[self.alive])

    @property
    def m_t(self):
        return _maximum(self.displacement[self.surviving])

    @property
    def w_hat(self):
        lam, _ = rates(self.model.law)
        return math.exp(-lam * self.t) * self.z_t

    @property
    def sup_r_t(self):
        """ max_{s <= t} R_s from the per-edge discrete running maxima; None if not recorded. """
        return None if self.edge_max is None else float(self.edge_max.max())

    @property
    def r_t_delayed(self):
        if self.delayed is None:
            return None
        return _maximum(self.positions[self.delayed])

    @property
    def m_t_delayed(self):
        if self.delayed_descendants is None:
            return None
        return _maximum(self.displacement[self.delayed_descendants > 0])

    @property
    def leaf_generations(self):
        """ n^v for every alive leaf v: the number of particles on its path below the root. """
        return self.generation[self.alive]

    def labels(self):
        labels = [()] * self.size
        for index in range(1, self.size):
            labels[index] = labels[self.parent[index]] + (int(self.child_index[index]),)
        return labels

    @property
    def particles(self):
        if self._particles is None:
            positions = self.positions
            surviving = self.surviving
            self._particles = [
                ParticleRecord(
                    label=label,
                    birth=self.birth[index],
                    end=self.end[index],
                    displacement=self.displacement[index],
                    position=positions[index] if self.alive[index] else None,
                    alive=self.alive[index],
                    surviving=surviving[index],
                    delayed=None if self.delayed_descendants is None else bool(self.delayed_descendants[index] > 0),
                )
                for index, label in enumerate(self.labels())
            ]
        return self._particles

    def summary(self, failure=None):
        return TreeSummary(
            t=self.t,
            z_t=self.z_t,
            r_t=self.r_t,
            m_t=self.m_t,
            w_hat=self.w_hat,
            sup_r_t=self.sup_r_t,
            r_t_delayed=self.r_t_delayed,
            m_t_delayed=self.m_t_delayed,
            failure=failure,
        )


def _child_indices(offspring):
    total = int(offspring.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    group_starts = np.repeat(np.cumsum(offspring) - offspring, offspring)
    return np.arange(total, dtype=np.int64) - group_starts + 1


def simulate(model, t, rng, record_delayed=0.0, record_sup_path=False, population_cap=None, substeps=None):
    """
    Simulate one tree to horizon t.

    Lifetimes are exponential(beta), offspring counts come from the law's pmf and every edge
    is displaced by one exact stable increment of its duration. With ``record_sup_path`` each
    edge is split into ``substeps`` sub-increments and its discrete running maximum is kept.
    With ``record_delayed`` = delta > 0 each alive leaf is flagged as surviving to t + delta.
    """
    if t < 0:
        raise ValidationError({'t': f'The horizon must be nonnegative, got {t!r}.'})
    if t > settings.SIMULATION_HORIZON_CAP:
        raise ValidationError({'t': f'The horizon {t!r} exceeds SIMULATION_HORIZON_CAP.'})
    if record_delayed < 0:
        raise ValidationError({'record_delayed': 'The survival delay must be nonnegative.'})
    cap = population_cap or settings.SIMULATION_POPULATION_CAP
    substeps = substeps or settings.SUP_PATH_SUBSTEPS
    law, stable = model.law, model.stable
    pmf = law.coefficients / law.coefficients.sum()
    mean_lifetime = 1.0 / law.branching_rate

    parents = np.array([-1], dtype=np.int64)
    child_index = np.zeros(1, dtype=np.int64)
    births = np.zeros(1)
    starts = np.array([model.start_position])
    chunks = []
    offsets = [0]
    generation = 0
    while births.size:
        count = births.size
        if offsets[-1] + count > cap:
            raise PopulationCapExceeded(cap, t)
        deaths = births + rng.exponential(mean_lifetime, size=count)
        ends = np.minimum(deaths, t)
        durations = ends - births
        displacement = np.zeros(count)
        edge_max = starts.copy() if record_sup_path else None
        moving = durations > 0.0
        if moving.any():
            if record_sup_path:
                increments, running = sample_path_max(stable, durations[moving], rng, substeps=substeps)
                displacement[moving] = increments
                edge_max[moving] = starts[moving] + running
            else:
                displacement[moving] = sample_increment(stable, durations[moving], rng)
        alive = deaths > t
        chunks.append({
            'parent': parents,
            'child_index': child_index,
            'generation': np.full(count, generation, dtype=np.int64),
            'birth': births,
            'end': ends,
            'start': starts,
            'displacement': displacement,
            'alive': alive,
            'edge_max': edge_max,
        })

        branching = np.flatnonzero(~alive)
        offspring = rng.choice(pmf.size, size=branching.size, p=pmf)
        parents = np.repeat(offsets[-1] + branching, offspring)
        child_index = _child_indices(offspring)
        births = np.repeat(deaths[branching], offspring)
        starts = np.repeat(starts[branching] + displacement[branching], offspring)
        offsets.append(offsets[-1] + count)
        generation += 1

    columns = {
        name: np.concatenate([chunk[name] for chunk in chunks])
        for name in ('parent', 'child_index', 'generation', 'birth', 'end', 'start', 'displacement', 'alive')
    }
    columns['edge_max'] = np.concatenate([chunk['edge_max'] for chunk in chunks]) if record_sup_path else None

    delayed = None
    if record_delayed > 0:
        delayed = np.zeros(offsets[-1], dtype=bool)
        leaves = np.flatnonzero(columns['alive'])
        delayed[leaves] = rng.random(leaves.size) < survival_prob(law, record_delayed)

    logger.debug(f'Simulated {offsets[-1]} particles over {generation} generations to t={t}.')
    return TreeSnapshot(t, model, columns, offsets, delay=record_delayed, delayed=delayed)
