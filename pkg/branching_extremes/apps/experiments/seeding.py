"""
Per-replication random streams.

Every stream is a Philox counter-based generator keyed by the master seed and the spawn key
(stream family, horizon index, replication index). The derivation depends on nothing else, so
the draws of a replication are the same whichever worker runs it and on any host running the
same numpy release.
"""

import numpy as np

from branching_extremes.apps.experiments.constants import MASTER_SEED_BITS, RandomStreams


def seed_sequence(master_seed, replication_index, horizon_index=0, stream=RandomStreams.TREES):
    if not 0 <= master_seed < 2 ** MASTER_SEED_BITS:
        raise ValueError(f'The master seed must fit in {MASTER_SEED_BITS} bits, got {master_seed!r}.')
    if replication_index < 0 or horizon_index < 0:
        raise ValueError('Stream indices are nonnegative.')
    return np.random.SeedSequence(
        int(master_seed), spawn_key=(int(stream), int(horizon_index), int(replication_index)),
    )


def seed_stream(master_seed, replication_index, horizon_index=0, stream=RandomStreams.TREES):
    """
    The generator for one replication of one horizon.
    """
    sequence = seed_sequence(master_seed, replication_index, horizon_index, stream)
    return np.random.Generator(np.random.Philox(sequence))
